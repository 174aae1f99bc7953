#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "coldgate/errors.hpp"
#include "coldgate/lattice_qc.hpp"

using namespace coldgate;

namespace {

std::vector<cplx> random_state(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    std::vector<cplx> v(dim);
    double s = 0.0;
    for (auto& a : v) {
        a = cplx(n(rng), n(rng));
        s += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(s);
    return v;
}

double distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double e = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
    return e;
}

double overlap2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return std::norm(s);
}

}  // namespace

TEST_CASE("register basics") {
    LatticeRegister r(3);
    CHECK(r.dimension() == 8);
    r.reset({1, 0, 1});
    CHECK(std::abs(r.state()[0b101] - 1.0) < 1e-15);
    CHECK(r.excitation(0) == doctest::Approx(1.0));
    CHECK(r.excitation(1) == doctest::Approx(0.0));
    CHECK_THROWS_AS(LatticeRegister(21), ValidationError);
    CHECK_THROWS_AS(r.set_state(std::vector<cplx>(4)), ValidationError);

    const auto j = nlohmann::json::parse(r.to_json());
    REQUIRE(j.size() == 8);
    CHECK(j[5][0].get<double>() == doctest::Approx(1.0));
    CHECK(j[5][1].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("Hadamard twice is the identity; measurement collapses") {
    LatticeRegister r(2);
    single_qubit(r, 0, Gate::H);
    single_qubit(r, 1, Gate::H);
    std::mt19937_64 rng(5);
    const auto out = r.measure({0, 1}, rng);
    CHECK(r.norm() == doctest::Approx(1.0));
    CHECK(std::abs(r.state()[r.index_of(out)]) == doctest::Approx(1.0));
    LatticeRegister s(1);
    single_qubit(s, 0, Gate::H);
    single_qubit(s, 0, Gate::H);
    CHECK(std::abs(s.state()[0] - 1.0) < 1e-15);
    // R90 = Y rotation by pi/2 equals X H
    const auto r90 = gate_matrix(Gate::R90), h = gate_matrix(Gate::H), x = gate_matrix(Gate::X);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            cplx xh = x[2 * i] * h[k] + x[2 * i + 1] * h[2 + k];
            CHECK(std::abs(r90[2 * i + k] - xh) < 1e-15);
        }
}

TEST_CASE("horizontal and vertical shifts commute") {
    LatticeRegister a(3, 3);
    a.set_state(random_state(512, 3));
    LatticeRegister b = a;
    apply_lx(a, 0.7);
    apply_ly(a, 1.9);
    apply_ly(b, 1.9);
    apply_lx(b, 0.7);
    CHECK(distance(a.state(), b.state()) < 1e-14);
    LatticeRegister row(4);
    CHECK_THROWS_AS(apply_ly(row, 1.0), GeometryMismatch);
}

TEST_CASE("LX acts on 01 neighbours only") {
    LatticeRegister r(2);
    for (int d = 0; d < 4; ++d) {
        r.reset({d >> 1, d & 1});
        apply_lx(r, 0.9);
        const cplx want = d == 0b01 ? std::exp(cplx(0, -0.9)) : 1.0;
        CHECK(std::abs(r.state()[d] - want) < 1e-15);
    }
}

TEST_CASE("Ramsey: dark at 2pi, entangled pair at pi") {
    LatticeRegister r(4);
    ramsey_sequence(r, 2 * kPi);
    for (int s = 0; s < 4; ++s) CHECK(r.excitation(s) < 1e-24);
    for (int L = 1; L <= 5; ++L) {
        LatticeRegister c(L);
        ramsey_sequence(c, kPi);
        double bright = 0.0;
        for (int s = 0; s < L; ++s) bright += c.excitation(s);
        CHECK(bright == doctest::Approx(cluster_bright_count(L, kPi)).epsilon(1e-12));
    }
}

TEST_CASE("random fill statistics") {
    const auto f = random_fill(200000, 1, 0.3, 9);
    int atoms = 0;
    for (bool o : f.occupied) atoms += o;
    CHECK(f.census.atoms == atoms);
    CHECK(double(atoms) / 200000 == doctest::Approx(0.3).epsilon(0.02));
    long covered = 0;
    for (auto [size, count] : f.census.clusters) covered += size * count;
    CHECK(covered == atoms);
    CHECK(random_fill(1000, 3, 0.5, 2).occupied == random_fill(1000, 3, 0.5, 2).occupied);
    CHECK_THROWS_AS(random_fill(10, 1, 1.5, 1), ValidationError);
}

TEST_CASE("Shor encode then decode is the identity") {
    for (std::uint64_t seed : {1, 2}) {
        const auto s = random_state(2, seed);
        LatticeRegister r = shor_bare(s[0], s[1]);
        const auto before = r.state();
        shor_encode(r);
        CHECK(overlap2(r.state(), before) < 0.99);
        shor_decode(r);
        CHECK(distance(r.state(), before) < 1e-13);
    }
    const auto w0 = shor_codeword(0), w1 = shor_codeword(1);
    CHECK(overlap2(w0, w1) < 1e-28);
    CHECK(overlap2(standard_shor_codeword(0), standard_shor_codeword(1)) < 1e-28);
}

TEST_CASE("every single Pauli error is corrected by its table row") {
    const cplx alpha(0.6, 0.0), beta(0.0, 0.8);
    const auto rows = syndrome_table(alpha, beta);
    REQUIRE(rows.size() == 28);
    CHECK(rows[0].syndrome_string() == "000 00 000");
    for (const auto& row : rows) {
        CHECK(row.residual_fidelity == doctest::Approx(1.0).epsilon(1e-12));
        const auto u = correction_for(row.residual);
        const cplx a = u[0] * row.central[0] + u[1] * row.central[1];
        const cplx b = u[2] * row.central[0] + u[3] * row.central[1];
        CHECK(std::norm(std::conj(alpha) * a + std::conj(beta) * b) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // syndromes depend only on the error
    const auto other = syndrome_table(cplx(0.8, 0.0), cplx(-0.6, 0.0));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].bits == other[k].bits);
        CHECK(rows[k].residual == other[k].residual);
    }
    // z4 and z5 share a syndrome but need different corrections
    CHECK(rows[22].bits == rows[23].bits);
    CHECK(rows[22].residual != rows[23].residual);
    CHECK(decode_syndrome(rows[22].bits, rows) == rows[22].residual);

    std::istringstream csv(syndrome_table_csv(rows));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "error,syndrome,central");
    int n = 0;
    while (std::getline(csv, line)) ++n;
    CHECK(n == 27);
}

TEST_CASE("tampered shift phase breaks the code") {
    // the syndrome register no longer ends in a basis state
    CHECK_THROWS_AS(syndrome_table(cplx(0.6, 0.0), cplx(0.0, 0.8), kPi + 0.1), NonBasisSyndrome);
}

TEST_CASE("fault-tolerant CNOT logical map") {
    const auto m = ft_cnot_logical(ClosingPulse::sign_free);
    const int perm[4] = {0, 3, 2, 1};
    for (int in = 0; in < 4; ++in)
        for (int o = 0; o < 4; ++o) CHECK(std::abs(m.m[o][in] - (o == perm[in] ? 1.0 : 0.0)) < 1e-10);
    CHECK(m.leakage < 1e-12);
    const auto h = ft_cnot_logical(ClosingPulse::hadamard);
    for (int in = 0; in < 4; ++in) {
        double col = 0.0;
        for (int o = 0; o < 4; ++o) col += std::norm(h.m[o][in]);
        CHECK(col == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(h.m[perm[in]][in]) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("Armada parity checks flag the hit row and spare the data") {
    const auto z = standard_shor_codeword(0), o = standard_shor_codeword(1);
    std::vector<cplx> enc(512);
    for (int i = 0; i < 512; ++i) enc[i] = 0.6 * z[i] + cplx(0, 0.8) * o[i];
    const auto clean = armada_parity_check(enc, ParityKind::spin_flip, {0, 1}, 4);
    CHECK(clean.parities == std::vector<int>{0, 0, 0});
    CHECK(clean.block_fidelity == doctest::Approx(1.0).epsilon(1e-10));
    LatticeRegister blk(3, 3);
    blk.set_state(enc);
    apply_pauli(blk, {'x', 5});
    CHECK(armada_parity_check(blk.state(), ParityKind::spin_flip, {0, 1}, 4).parities == std::vector<int>{0, 1, 0});

    const auto pclean = armada_parity_check(enc, ParityKind::phase_flip, {0, 1}, 4);
    for (int p : pclean.parities) CHECK(p == 0);
    CHECK(pclean.block_fidelity == doctest::Approx(1.0).epsilon(1e-10));
    LatticeRegister pz(3, 3);
    pz.set_state(enc);
    apply_pauli(pz, {'z', 1});
    const auto hit = armada_parity_check(pz.state(), ParityKind::phase_flip, {0, 1}, 4);
    int flagged = 0;
    for (int p : hit.parities) flagged += p;
    CHECK(flagged == 1);
}

TEST_CASE("sweep equals a string of controlled phases") {
    std::vector<int> levels{3, 2, 2};
    LatticeRegister r(3, 1, levels);
    const auto s0 = random_state(r.dimension(), 8);
    r.set_state(s0);
    sweep(r, 0, {1, 2}, {0.4, 1.3}, {0.2, 0.0});
    for (std::size_t k = 0; k < r.dimension(); ++k) {
        double p = 0.0;
        if (r.digit(k, 0) == 2) p = (r.digit(k, 1) ? 0.4 : 0.2) + (r.digit(k, 2) ? 1.3 : 0.0);
        CHECK(std::abs(r.state()[k] - s0[k] * std::exp(cplx(0, p))) < 1e-15);
    }
    LatticeRegister plain(2);
    CHECK_THROWS_AS(sweep(plain, 0, {1}, {1.0}), ValidationError);
}

TEST_CASE("GHZ from a pi sweep") {
    for (int n = 1; n <= 6; ++n)
        CHECK(ghz_fidelity(ghz_standard_form(sweep_product(n, std::vector<double>(n, kPi)))) ==
              doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ghz_fidelity(ghz_standard_form(sweep_product(3, std::vector<double>(3, kPi / 2)))) < 0.9);
}

TEST_CASE("sweep QFT reproduces the DFT") {
    for (int a = 0; a < 8; ++a) {
        const std::vector<int> bits{(a >> 2) & 1, (a >> 1) & 1, a & 1};
        const auto q = sweep_qft(bits);
        const auto want = dft_target(bits);
        for (std::size_t t = 0; t < want.size(); ++t)
            CHECK(std::abs(q.reg.state()[a * want.size() + t] - want[t]) < 1e-12);
        CHECK(q.schedule.size() == 6);
    }
}

TEST_CASE("sparse level-2 register") {
    SparseRegister r(192);
    std::vector<int> bits(192, 0);
    bits[5] = 1;
    r.add(bits, 1.0);
    r.pair_phase({{4, 5}, {5, 6}}, kPi / 3);
    CHECK(std::abs(r.amplitude(bits) - std::exp(cplx(0, kPi / 3))) < 1e-15);
    CHECK(r.terms() == 1);
    const auto pairs = level2_pairs();
    CHECK_FALSE(pairs.empty());
    for (auto [a, b] : pairs) {
        CHECK(a < 81);
        CHECK(b >= 81);
    }
}
