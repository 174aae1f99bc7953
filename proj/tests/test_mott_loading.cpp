#include <doctest.h>

#include <cmath>
#include <sstream>

#include "coldgate/errors.hpp"
#include "coldgate/mott_loading.hpp"

using namespace coldgate;

namespace {

BoseHubbardLattice small(double J, double mu) {
    BoseHubbardLattice l;
    l.lx = l.ly = 4;
    l.J = J;
    l.U = 30.0;
    l.mu = mu;
    return l;
}

double mean_density(const GutzwillerState& s) { return s.total_particles() / s.f.size(); }

}  // namespace

TEST_CASE("superlattice values") {
    CHECK(superlattice(0, 0, 40, 9) == doctest::Approx(0.0));
    CHECK(superlattice(4.5, 0, 40, 9) == doctest::Approx(40.0));
    CHECK(superlattice(4.5, 4.5, 40, 9) == doctest::Approx(80.0));
    CHECK(superlattice(9, 9, 40, 9) == doctest::Approx(0.0).epsilon(1e-12));
    const auto l = BoseHubbardLattice::with_superlattice(18, 18, 1, 30, 15, 40, 9);
    CHECK(l.offset(9 * 18 + 9) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("lattice validation and neighbors") {
    auto l = small(1.0, 15.0);
    CHECK(l.neighbors(0).size() == 4);
    l.boundary = Boundary::open;
    CHECK(l.neighbors(0).size() == 2);
    l.U = -1.0;
    CHECK_THROWS_AS(l.validate(), ValidationError);
    auto m = small(1.0, 15.0);
    m.offsets = {1.0, 2.0};
    CHECK_THROWS_AS(m.validate(), ValidationError);
}

TEST_CASE("atomic limit particle-hole thresholds") {
    for (auto [mu, n] : {std::pair{-1.0, 0}, std::pair{1.0, 1}, std::pair{29.0, 1}, std::pair{31.0, 2}, std::pair{59.0, 2}}) {
        const auto s = gutzwiller_minimize(small(0.0, mu), 6, 1);
        CHECK(s.converged);
        for (std::size_t i = 0; i < s.f.size(); ++i) CHECK(s.density(int(i)) == doctest::Approx(n).epsilon(1e-10));
    }
}

TEST_CASE("Mott insulator to superfluid") {
    const auto mi = gutzwiller_minimize(small(0.5, 15.0), 6, 1);
    const auto labels = phase_classify(mi);
    for (const auto& l : labels) CHECK(l.str() == "MI(1)");
    const auto sf = gutzwiller_minimize(small(3.0, 15.0), 6, 1);
    CHECK(std::abs(sf.order_parameter(0)) > 0.1);
    CHECK_FALSE(phase_classify(sf)[0].mott);
    // translation invariance of the homogeneous solution
    for (int i = 1; i < 16; ++i) CHECK(sf.density(i) == doctest::Approx(sf.density(0)).epsilon(1e-6));
}

TEST_CASE("sweeps never raise the energy") {
    const auto l = BoseHubbardLattice::with_superlattice(9, 9, 1.0, 30.0, 15.0, 40.0, 9.0);
    const auto s = gutzwiller_minimize(l, 6, 3);
    CHECK(s.converged);
    for (std::size_t k = 1; k < s.energy_history.size(); ++k)
        CHECK(s.energy_history[k] <= s.energy_history[k - 1] + 1e-9);
    CHECK(s.energy == doctest::Approx(gutzwiller_energy(l, s.f)));
    CHECK(s.max_norm_error() < 1e-10);
}

TEST_CASE("raising n_max by 2 leaves the energy alone") {
    const auto mi = small(0.5, 15.0);
    CHECK(std::abs(gutzwiller_minimize(mi, 6, 1).energy - gutzwiller_minimize(mi, 8, 1).energy) < 1e-8 * mi.J);
    // deep superfluid (zJ/U = 0.4) needs a larger cutoff before the tail stops mattering
    const auto sf = small(3.0, 15.0);
    const auto a = gutzwiller_minimize(sf, 8, 1), b = gutzwiller_minimize(sf, 10, 1);
    CHECK(std::abs(a.energy - b.energy) < 1e-8 * sf.J);
    CHECK(mean_density(a) == doctest::Approx(mean_density(b)).epsilon(1e-8));
    const auto sl = BoseHubbardLattice::with_superlattice(18, 18, 1.0, 30.0, 15.0, 40.0, 9.0);
    CHECK(std::abs(gutzwiller_minimize(sl, 6, 1).energy - gutzwiller_minimize(sl, 8, 1).energy) < 1e-8);
}

TEST_CASE("superlattice loading gives clean blocks") {
    const auto l = BoseHubbardLattice::with_superlattice(18, 18, 1.0, 30.0, 15.0, 40.0, 9.0);
    const auto s = gutzwiller_minimize(l, 6, 1);
    const auto labels = phase_classify(s);
    int filled = 0;
    for (int i = 0; i < l.sites(); ++i) {
        CHECK(labels[i].mott);
        filled += labels[i].n;
    }
    CHECK(filled > 0);
    CHECK(filled < l.sites());
    CHECK(labels[0].n == 1);
    const auto d = loading_diagnostics(l, s);
    CHECK(d.min_charge_gap > 0.0);
    CHECK(d.max_variance < 1e-3);

    std::istringstream csv(gutzwiller_csv(s, labels));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,y,density,order_parameter,variance,label");
    int rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == l.sites());
}

TEST_CASE("same seed, same state") {
    const auto l = BoseHubbardLattice::with_superlattice(9, 9, 2.0, 30.0, 15.0, 40.0, 9.0);
    const auto a = gutzwiller_minimize(l, 5, 11), b = gutzwiller_minimize(l, 5, 11);
    CHECK(gutzwiller_csv(a, phase_classify(a)) == gutzwiller_csv(b, phase_classify(b)));
}
