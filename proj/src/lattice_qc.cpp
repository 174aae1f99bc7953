#include "coldgate/lattice_qc.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "coldgate/errors.hpp"

namespace coldgate {

namespace {

const cplx I(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<cplx> normalized_phase(std::vector<cplx> v) {
    std::size_t big = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (std::abs(v[k]) > std::abs(v[big]) + 1e-12) big = k;
    const cplx ph = std::abs(v[big]) > 0 ? std::conj(v[big]) / std::abs(v[big]) : cplx(1.0);
    for (auto& a : v) a *= ph;
    return v;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

std::vector<cplx> kron(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

void apply_to_sites(LatticeRegister& reg, Gate g, std::initializer_list<int> sites_1based, int offset = 0) {
    for (int s : sites_1based) single_qubit(reg, offset + s - 1, g);
}

void check_shor_block(const LatticeRegister& reg) {
    if (reg.lx() != 3 || reg.ly() != 3) throw GeometryMismatch("Shor block must be a 3x3 register");
    for (int s = 0; s < 9; ++s)
        if (!reg.occupied(s)) throw ValidationError("Shor block must be fully occupied");
}

}  // namespace

// ---------------------------------------------------------------- register

LatticeRegister::LatticeRegister(int lx, int ly, std::vector<int> levels, std::vector<bool> occupied)
    : lx_(lx), ly_(ly), levels_(std::move(levels)), occupied_(std::move(occupied)) {
    if (lx < 1 || ly < 1) throw GeometryMismatch("LatticeRegister: dimensions must be >= 1");
    const int n = lx * ly;
    if (levels_.empty()) levels_.assign(n, 2);
    if (occupied_.empty()) occupied_.assign(n, true);
    if (static_cast<int>(levels_.size()) != n || static_cast<int>(occupied_.size()) != n)
        throw GeometryMismatch("LatticeRegister: levels/mask size does not match geometry");
    double qubits = 0.0;
    for (int s = 0; s < n; ++s) {
        if (levels_[s] != 2 && levels_[s] != 3) throw ValidationError("LatticeRegister: levels must be 2 or 3");
        if (!occupied_[s]) levels_[s] = 1;
        qubits += std::log2(double(levels_[s]));
    }
    if (qubits > kMaxQubits + 1e-9)
        throw ValidationError("LatticeRegister: statevector exceeds " + std::to_string(kMaxQubits) + " qubits");
    stride_.assign(n, 1);
    std::size_t dim = 1;
    for (int s = n - 1; s >= 0; --s) {
        stride_[s] = dim;
        dim *= static_cast<std::size_t>(levels_[s]);
    }
    state_.assign(dim, 0.0);
    state_[0] = 1.0;
}

void LatticeRegister::set_state(std::vector<cplx> s) {
    if (s.size() != state_.size()) throw GeometryMismatch("LatticeRegister::set_state: dimension mismatch");
    state_ = std::move(s);
}

std::size_t LatticeRegister::index_of(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) != sites()) throw GeometryMismatch("index_of: digit count mismatch");
    std::size_t idx = 0;
    for (int s = 0; s < sites(); ++s) {
        if (digits[s] < 0 || digits[s] >= levels_[s])
            throw ValidationError("site " + std::to_string(s + 1) + ": level " + std::to_string(digits[s]) +
                                  " not available");
        idx += digits[s] * stride_[s];
    }
    return idx;
}

void LatticeRegister::reset(const std::vector<int>& digits) {
    std::fill(state_.begin(), state_.end(), cplx(0.0));
    state_[digits.empty() ? 0 : index_of(digits)] = 1.0;
}

double LatticeRegister::norm() const {
    double s = 0.0;
    for (const auto& a : state_) s += std::norm(a);
    return std::sqrt(s);
}

void LatticeRegister::apply_1q(int site, const std::array<cplx, 4>& u, int upper) {
    if (site < 0 || site >= sites()) throw ValidationError("site " + std::to_string(site + 1) + " out of range");
    if (!occupied_[site]) throw ValidationError("site " + std::to_string(site + 1) + " is empty");
    if (upper < 1 || upper >= levels_[site])
        throw ValidationError("site " + std::to_string(site + 1) + ": level " + std::to_string(upper) + " not available");
    const std::size_t st = stride_[site];
    const std::size_t block = st * levels_[site];
    for (std::size_t base = 0; base < state_.size(); base += block)
        for (std::size_t off = 0; off < st; ++off) {
            cplx& a0 = state_[base + off];
            cplx& a1 = state_[base + off + upper * st];
            const cplx b0 = u[0] * a0 + u[1] * a1, b1 = u[2] * a0 + u[3] * a1;
            a0 = b0;
            a1 = b1;
        }
}

std::vector<int> LatticeRegister::measure(const std::vector<int>& sites_to_measure, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double total = 0.0;
    for (const auto& a : state_) total += std::norm(a);
    const double r = u(rng) * total;
    double acc = 0.0;
    std::size_t pick = state_.size() - 1;
    for (std::size_t k = 0; k < state_.size(); ++k) {
        acc += std::norm(state_[k]);
        if (acc > r && std::norm(state_[k]) > 0) {
            pick = k;
            break;
        }
    }
    std::vector<int> out;
    for (int s : sites_to_measure) out.push_back(digit(pick, s));
    double kept = 0.0;
    for (std::size_t k = 0; k < state_.size(); ++k) {
        bool match = true;
        for (std::size_t j = 0; j < sites_to_measure.size() && match; ++j)
            match = digit(k, sites_to_measure[j]) == out[j];
        if (!match) state_[k] = 0.0;
        else kept += std::norm(state_[k]);
    }
    const double scale = 1.0 / std::sqrt(kept);
    for (auto& a : state_) a *= scale;
    return out;
}

double LatticeRegister::excitation(int site) const {
    double p = 0.0;
    for (std::size_t k = 0; k < state_.size(); ++k)
        if (digit(k, site) == 1) p += std::norm(state_[k]);
    return p;
}

std::string LatticeRegister::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& a : state_) j.push_back({a.real(), a.imag()});
    return j.dump();
}

// ---------------------------------------------------------------- gates

std::array<cplx, 4> gate_matrix(Gate g, double lambda) {
    switch (g) {
        case Gate::H: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
        case Gate::X: return {0.0, 1.0, 1.0, 0.0};
        case Gate::Y: return {0.0, -I, I, 0.0};
        case Gate::Z: return {1.0, 0.0, 0.0, -1.0};
        case Gate::R90:
        case Gate::R270: {
            const double th = g == Gate::R90 ? kPi / 2 : 3 * kPi / 2;
            const double c = std::cos(th / 2), s = std::sin(th / 2);
            return {c, -s, s, c};
        }
        case Gate::Phase: return {1.0, 0.0, 0.0, std::exp(I * lambda)};
    }
    return {1.0, 0.0, 0.0, 1.0};
}

void single_qubit(LatticeRegister& reg, int site, Gate g, double lambda) { reg.apply_1q(site, gate_matrix(g, lambda)); }

namespace {

double pair_phase(int left, int right, double phi, const PlanarPhases* planar) {
    if (left == 0 && right == 1) return -phi;
    if (!planar) return 0.0;
    if (left == 0 && right == 0) return -planar->p00;
    if (left == 1 && right == 1) return -planar->p11;
    if (left == 1 && right == 0) return -planar->p10;
    return 0.0;
}

void shift(LatticeRegister& reg, const std::vector<double>& phases, const PlanarPhases* planar, bool vertical) {
    if (static_cast<int>(phases.size()) != reg.sites())
        throw GeometryMismatch("lattice shift: one phase per site required");
    std::vector<std::pair<int, int>> pairs;
    if (!vertical) {
        for (int y = 0; y < reg.ly(); ++y)
            for (int x = 0; x + 1 < reg.lx(); ++x) pairs.emplace_back(reg.site_at(x, y), reg.site_at(x + 1, y));
    } else {
        for (int x = 0; x < reg.lx(); ++x)
            for (int y = 0; y + 1 < reg.ly(); ++y) pairs.emplace_back(reg.site_at(x, y), reg.site_at(x, y + 1));
    }
    pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                               [&](auto p) { return !reg.occupied(p.first) || !reg.occupied(p.second); }),
                pairs.end());
    reg.apply_phase([&](std::size_t k) {
        double p = 0.0;
        for (auto [a, b] : pairs) p += pair_phase(reg.digit(k, a), reg.digit(k, b), phases[b], planar);
        return p;
    });
}

}  // namespace

void apply_lx(LatticeRegister& reg, const std::vector<double>& phases, const PlanarPhases* planar) {
    shift(reg, phases, planar, false);
}

void apply_lx(LatticeRegister& reg, double phi) { apply_lx(reg, std::vector<double>(reg.sites(), phi)); }

void apply_ly(LatticeRegister& reg, const std::vector<double>& phases, const PlanarPhases* planar) {
    if (reg.ly() < 2) throw GeometryMismatch("apply_ly requires a 2D register");
    shift(reg, phases, planar, true);
}

void apply_ly(LatticeRegister& reg, double phi) { apply_ly(reg, std::vector<double>(reg.sites(), phi)); }

// ---------------------------------------------------------------- Ramsey

void ramsey_sequence(LatticeRegister& reg, double phi) {
    for (int s = 0; s < reg.sites(); ++s)
        if (reg.occupied(s)) single_qubit(reg, s, Gate::H);
    apply_lx(reg, phi);
    for (int s = 0; s < reg.sites(); ++s)
        if (reg.occupied(s)) single_qubit(reg, s, Gate::H);
}

RandomFill random_fill(int lx, int ly, double eta, std::uint64_t seed) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("random_fill: eta must lie in [0, 1]");
    if (lx < 1 || ly < 1) throw ValidationError("random_fill: dimensions must be >= 1");
    RandomFill f;
    f.lx = lx;
    f.ly = ly;
    f.occupied.resize(static_cast<std::size_t>(lx) * ly);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution fill(eta);
    for (std::size_t k = 0; k < f.occupied.size(); ++k) f.occupied[k] = fill(rng);
    f.census.sites = lx * ly;
    for (int y = 0; y < ly; ++y) {
        int run = 0;
        for (int x = 0; x <= lx; ++x) {
            const bool occ = x < lx && f.occupied[static_cast<std::size_t>(y) * lx + x];
            if (occ) {
                ++run;
                ++f.census.atoms;
            } else if (run > 0) {
                ++f.census.clusters[run];
                run = 0;
            }
        }
    }
    return f;
}

double cluster_bright_count(int size, double phi) {
    if (size < 1) return 0.0;
    if (size == 1) {
        LatticeRegister r(1);
        ramsey_sequence(r, phi);
        return r.excitation(0);
    }
    // Each atom's final state depends only on its nearest neighbours, so edges follow from a
    // pair and every interior atom from the middle of a triplet.
    LatticeRegister pair(2);
    ramsey_sequence(pair, phi);
    double count = pair.excitation(0) + pair.excitation(1);
    if (size > 2) {
        LatticeRegister tri(3);
        ramsey_sequence(tri, phi);
        count += (size - 2) * tri.excitation(1);
    }
    return count;
}

double bright_fraction(const FillCensus& census, double phi) {
    if (census.sites == 0) return 0.0;
    double bright = 0.0;
    for (auto [size, count] : census.clusters) bright += count * cluster_bright_count(size, phi);
    return bright / census.sites;
}

double cluster_exponent(const std::vector<double>& etas, const std::vector<double>& frequencies) {
    if (etas.size() != frequencies.size() || etas.size() < 2)
        throw ValidationError("cluster_exponent: need at least two (eta, frequency) points");
    std::vector<double> x, y;
    for (std::size_t k = 0; k < etas.size(); ++k) {
        if (!(frequencies[k] > 0)) throw ValidationError("cluster_exponent: zero cluster frequency");
        x.push_back(std::log(etas[k]));
        y.push_back(std::log(frequencies[k] / ((1 - etas[k]) * (1 - etas[k]))));
    }
    const double n = double(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n, my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    return sxy / sxx;
}

// ---------------------------------------------------------------- Shor memory

LatticeRegister shor_bare(cplx alpha, cplx beta) {
    LatticeRegister r(3, 3);
    std::vector<cplx> s(r.dimension(), 0.0);
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(n > 0)) throw ValidationError("shor_bare: alpha and beta both zero");
    s[0] = alpha / n;
    s[std::size_t(1) << 4] = beta / n;
    r.set_state(std::move(s));
    return r;
}

void shor_encode(LatticeRegister& reg, double phi) {
    check_shor_block(reg);
    apply_to_sites(reg, Gate::H, {1, 2, 3, 4, 6, 7, 8, 9});
    apply_lx(reg, phi);
    apply_to_sites(reg, Gate::H, {1, 3, 4, 6, 7, 9});
    apply_to_sites(reg, Gate::X, {3, 6, 9});
    apply_ly(reg, phi);
    apply_to_sites(reg, Gate::H, {4, 5, 6});
    apply_lx(reg, phi);
    apply_to_sites(reg, Gate::H, {4, 6});
}

void shor_decode(LatticeRegister& reg, double phi) {
    check_shor_block(reg);
    apply_to_sites(reg, Gate::H, {4, 6});
    apply_lx(reg, phi);
    apply_to_sites(reg, Gate::H, {4, 5, 6});
    apply_ly(reg, phi);
    apply_to_sites(reg, Gate::X, {3, 6, 9});
    apply_to_sites(reg, Gate::H, {1, 3, 4, 6, 7, 9});
    apply_lx(reg, phi);
    apply_to_sites(reg, Gate::H, {1, 2, 3, 4, 6, 7, 8, 9});
}

std::vector<cplx> shor_codeword(int bit) {
    LatticeRegister r = bit ? shor_bare(0.0, 1.0) : shor_bare(1.0, 0.0);
    shor_encode(r);
    return normalized_phase(r.state());
}

std::vector<cplx> standard_shor_codeword(int bit) {
    std::vector<cplx> ghz(8, 0.0);
    ghz[0] = kInvSqrt2;
    ghz[7] = bit ? -kInvSqrt2 : kInvSqrt2;
    return kron(kron(ghz, ghz), ghz);
}

std::string residual_name(Residual r) {
    switch (r) {
        case Residual::a0_plus_b1: return "a0+b1";
        case Residual::a0_minus_b1: return "a0-b1";
        case Residual::a1_minus_b0: return "a1-b0";
        case Residual::a1_plus_b0: return "a1+b0";
    }
    return "?";
}

std::array<cplx, 4> correction_for(Residual r) {
    switch (r) {
        case Residual::a0_plus_b1: return {1.0, 0.0, 0.0, 1.0};
        case Residual::a0_minus_b1: return gate_matrix(Gate::Z);
        case Residual::a1_plus_b0: return gate_matrix(Gate::X);
        case Residual::a1_minus_b0: return {0.0, 1.0, -1.0, 0.0};  // Z X
    }
    return {1.0, 0.0, 0.0, 1.0};
}

std::string PauliError::name() const { return axis ? std::string(1, axis) + std::to_string(site) : "none"; }

std::string SyndromeRecord::syndrome_string() const {
    std::string s;
    for (int k = 0; k < 8; ++k) {
        if (k == 3 || k == 5) s += ' ';
        s += char('0' + bits[k]);
    }
    return s;
}

void apply_pauli(LatticeRegister& reg, const PauliError& e, int offset) {
    if (!e.axis) return;
    if (e.site < 1 || e.site > 9) throw ValidationError("Pauli error site must be 1..9");
    const Gate g = e.axis == 'x' ? Gate::X : e.axis == 'y' ? Gate::Y : e.axis == 'z' ? Gate::Z : Gate::H;
    if (g == Gate::H) throw ValidationError("Pauli error axis must be x, y or z");
    single_qubit(reg, offset + e.site - 1, g);
}

SyndromeRecord shor_decode_and_syndrome(LatticeRegister& reg, cplx alpha, cplx beta, double phi) {
    shor_decode(reg, phi);
    static const int kSyndromeSites[8] = {0, 1, 2, 3, 5, 6, 7, 8};
    std::map<std::array<int, 8>, double> weight;
    for (std::size_t k = 0; k < reg.dimension(); ++k) {
        const double w = std::norm(reg.state()[k]);
        if (w == 0.0) continue;
        std::array<int, 8> b;
        for (int j = 0; j < 8; ++j) b[j] = reg.digit(k, kSyndromeSites[j]);
        weight[b] += w;
    }
    auto best = std::max_element(weight.begin(), weight.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
    const double total = reg.norm() * reg.norm();
    if (total - best->second > 1e-8 * total)
        throw NonBasisSyndrome("syndrome register is not in a basis state (weight outside dominant pattern " +
                               num::format_double(total - best->second) + ")");
    SyndromeRecord rec;
    rec.bits = best->first;
    std::vector<int> digits(9);
    for (int j = 0; j < 8; ++j) digits[kSyndromeSites[j]] = rec.bits[j];
    for (int c = 0; c < 2; ++c) {
        digits[4] = c;
        rec.central[c] = reg.state()[reg.index_of(digits)];
    }
    const std::array<std::pair<Residual, std::array<cplx, 2>>, 4> forms{{
        {Residual::a0_plus_b1, {alpha, beta}},
        {Residual::a0_minus_b1, {alpha, -beta}},
        {Residual::a1_minus_b0, {-beta, alpha}},
        {Residual::a1_plus_b0, {beta, alpha}},
    }};
    const double cn = std::norm(rec.central[0]) + std::norm(rec.central[1]);
    rec.residual_fidelity = -1.0;
    for (const auto& [res, w] : forms) {
        const double wn = std::norm(w[0]) + std::norm(w[1]);
        const double f = std::norm(std::conj(w[0]) * rec.central[0] + std::conj(w[1]) * rec.central[1]) / (wn * cn);
        if (f > rec.residual_fidelity + 1e-12) {
            rec.residual_fidelity = f;
            rec.residual = res;
        }
    }
    return rec;
}

std::vector<SyndromeRecord> syndrome_table(cplx alpha, cplx beta, double phi) {
    std::vector<SyndromeRecord> rows;
    std::vector<PauliError> errors{{0, 0}};
    for (char axis : {'x', 'y', 'z'})
        for (int s = 1; s <= 9; ++s) errors.push_back({axis, s});
    for (const auto& e : errors) {
        LatticeRegister r = shor_bare(alpha, beta);
        shor_encode(r, phi);
        apply_pauli(r, e);
        SyndromeRecord rec = shor_decode_and_syndrome(r, alpha, beta, phi);
        rec.error = e;
        rows.push_back(rec);
    }
    return rows;
}

std::string syndrome_table_csv(const std::vector<SyndromeRecord>& rows) {
    std::ostringstream os;
    os << "error,syndrome,central\n";
    for (const auto& r : rows) {
        if (!r.error.axis) continue;
        os << r.error.name() << ',' << r.syndrome_string() << ',' << residual_name(r.residual) << '\n';
    }
    return os.str();
}

Residual decode_syndrome(const std::array<int, 8>& bits, const std::vector<SyndromeRecord>& table) {
    for (const auto& r : table)
        if (r.bits == bits) return r.residual;
    throw ValidationError("decode_syndrome: syndrome not in table");
}

// ---------------------------------------------------------------- FT-CNOT

void ft_cnot(LatticeRegister& reg, ClosingPulse closing) {
    if (reg.lx() != 9 || reg.ly() != 2) throw GeometryMismatch("ft_cnot: blocks must be stacked as a 9x2 register");
    for (int x = 0; x < 9; ++x) single_qubit(reg, reg.site_at(x, 1), Gate::H);
    apply_ly(reg, kPi);
    for (int x = 0; x < 9; ++x) single_qubit(reg, reg.site_at(x, 1), closing == ClosingPulse::hadamard ? Gate::H : Gate::R90);
}

LogicalMap ft_cnot_logical(ClosingPulse closing) {
    const std::vector<cplx> w[2] = {standard_shor_codeword(0), standard_shor_codeword(1)};
    LogicalMap lm;
    for (int in = 0; in < 4; ++in) {
        LatticeRegister reg(9, 2);
        reg.set_state(kron(w[in >> 1], w[in & 1]));
        ft_cnot(reg, closing);
        double kept = 0.0;
        for (int out = 0; out < 4; ++out) {
            lm.m[out][in] = inner(kron(w[out >> 1], w[out & 1]), reg.state());
            kept += std::norm(lm.m[out][in]);
        }
        lm.leakage = std::max(lm.leakage, 1.0 - kept);
    }
    return lm;
}

// ---------------------------------------------------------------- Armada

ParityOutcome armada_parity_check(const std::vector<cplx>& block, ParityKind kind, std::array<int, 2> pair,
                                  std::uint64_t seed) {
    if (block.size() != 512) throw GeometryMismatch("armada: block must be a 9-atom statevector");
    if (pair[0] < 0 || pair[1] > 2 || pair[0] >= pair[1]) throw ValidationError("armada: bad column/row pair");
    // Sites 0..8: block (row-major 3x3); 9..14: ancillas.
    LatticeRegister reg(15);
    std::vector<cplx> anc(64, 0.0);
    std::vector<std::pair<int, int>> meets;  // (ancilla site, block site)
    if (kind == ParityKind::spin_flip) {
        // (|00> + |11>) per row; ancilla (r, c) meets block (r, pair[c]).
        for (int i = 0; i < 64; ++i) {
            bool ok = true;
            for (int r = 0; r < 3; ++r) ok = ok && (((i >> (5 - 2 * r)) & 1) == ((i >> (4 - 2 * r)) & 1));
            if (ok) anc[i] = std::pow(kInvSqrt2, 3);
        }
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 2; ++c) meets.emplace_back(9 + 2 * r + c, 3 * r + pair[c]);
    } else {
        anc[0] = anc[63] = kInvSqrt2;
        // Ancilla row i (3 atoms) meets block row pair[i].
        for (int i = 0; i < 2; ++i)
            for (int c = 0; c < 3; ++c) meets.emplace_back(9 + 3 * i + c, 3 * pair[i] + c);
    }
    reg.set_state(kron(block, anc));
    if (kind == ParityKind::phase_flip)
        for (int s = 0; s < 9; ++s) single_qubit(reg, s, Gate::H);
    reg.apply_phase([&](std::size_t k) {
        double p = 0.0;
        for (auto [a, d] : meets)
            if (reg.digit(k, a) == 0 && reg.digit(k, d) == 1) p += kPi;
        return p;
    });
    if (kind == ParityKind::phase_flip)
        for (int s = 0; s < 9; ++s) single_qubit(reg, s, Gate::H);
    std::vector<int> anc_sites;
    for (int s = 9; s < 15; ++s) {
        single_qubit(reg, s, Gate::H);
        anc_sites.push_back(s);
    }
    std::mt19937_64 rng(seed);
    ParityOutcome out;
    out.ancilla_bits = reg.measure(anc_sites, rng);
    if (kind == ParityKind::spin_flip) {
        for (int r = 0; r < 3; ++r) out.parities.push_back(out.ancilla_bits[2 * r] ^ out.ancilla_bits[2 * r + 1]);
    } else {
        int p = 0;
        for (int b : out.ancilla_bits) p ^= b;
        out.parities.push_back(p);
    }
    int anc_index = 0;
    for (int b : out.ancilla_bits) anc_index = 2 * anc_index + b;
    std::vector<cplx> after(512);
    for (int i = 0; i < 512; ++i) after[i] = reg.state()[static_cast<std::size_t>(i) * 64 + anc_index];
    out.block_fidelity = std::norm(inner(block, after));
    return out;
}

// ---------------------------------------------------------------- sweeps

void sweep(LatticeRegister& reg, int selected, const std::vector<int>& string_sites, const std::vector<double>& phases,
           const std::vector<double>& phases0) {
    if (selected < 0 || selected >= reg.sites()) throw ValidationError("sweep: selected site out of range");
    if (reg.levels(selected) != 3) throw ValidationError("sweep: transport level r is not enabled on the selected atom");
    if (phases.size() != string_sites.size() || (!phases0.empty() && phases0.size() != string_sites.size()))
        throw ValidationError("sweep: one phase per string atom required");
    reg.apply_phase([&](std::size_t k) {
        if (reg.digit(k, selected) != 2) return 0.0;
        double p = 0.0;
        for (std::size_t j = 0; j < string_sites.size(); ++j) {
            const int d = reg.digit(k, string_sites[j]);
            if (d == 1) p += phases[j];
            else if (d == 0 && !phases0.empty()) p += phases0[j];
        }
        return p;
    });
}

LatticeRegister sweep_product(int n, const std::vector<double>& phases) {
    if (n < 1) throw ValidationError("sweep_product: need at least one string atom");
    std::vector<int> levels(n + 1, 2);
    levels[0] = 3;
    LatticeRegister reg(n + 1, 1, levels);
    std::vector<cplx> sel{kInvSqrt2, 0.0, kInvSqrt2};
    std::vector<cplx> plus{kInvSqrt2, kInvSqrt2};
    std::vector<cplx> s = sel;
    for (int j = 0; j < n; ++j) s = kron(s, plus);
    reg.set_state(std::move(s));
    std::vector<int> string_sites(n);
    std::iota(string_sites.begin(), string_sites.end(), 1);
    sweep(reg, 0, string_sites, phases);
    return reg;
}

LatticeRegister ghz_standard_form(const LatticeRegister& swept) {
    const int n = swept.sites();
    if (swept.levels(0) != 3) throw ValidationError("ghz_standard_form: first site must carry the r level");
    LatticeRegister out(n);
    std::vector<cplx> s(out.dimension(), 0.0);
    const std::size_t half = out.dimension() / 2;
    for (std::size_t k = 0; k < swept.dimension(); ++k) {
        const int d0 = swept.digit(k, 0);
        const std::size_t rest = k % half;
        if (d0 == 1 && std::abs(swept.state()[k]) > 1e-12)
            throw ValidationError("ghz_standard_form: selected atom populates level 1");
        if (d0 == 0) s[rest] += swept.state()[k];
        if (d0 == 2) s[half + rest] += swept.state()[k];
    }
    out.set_state(std::move(s));
    for (int j = 1; j < n; ++j) single_qubit(out, j, Gate::H);
    return out;
}

double ghz_fidelity(const LatticeRegister& reg) {
    const auto& s = reg.state();
    return 0.5 * std::norm(s.front() + s.back());
}

QftResult sweep_qft(const std::vector<int>& a) {
    const int m = static_cast<int>(a.size());
    if (m < 1) throw ValidationError("sweep_qft: empty source register");
    for (int b : a)
        if (b != 0 && b != 1) throw ValidationError("sweep_qft: source must be a computational basis state");
    QftResult res{LatticeRegister(2 * m), {}, 0.0};
    std::vector<cplx> src(std::size_t(1) << m, 0.0);
    std::size_t ai = 0;
    for (int b : a) ai = 2 * ai + b;
    src[ai] = 1.0;
    std::vector<cplx> tgt(std::size_t(1) << m, std::pow(kInvSqrt2, m));
    res.reg.set_state(kron(src, tgt));
    // At step s the source atoms have moved s sites: source l meets target k = l + s - m.
    for (int s = 1; s <= m; ++s) {
        const double phi = 2 * kPi / std::pow(2.0, m - s + 1);
        for (int l = m - s + 1; l <= m; ++l) {
            const int k = l + s - m;
            res.schedule.push_back({s, l, k, phi});
            const int src_site = l - 1, tgt_site = m + k - 1;
            res.reg.apply_phase([&](std::size_t idx) {
                return res.reg.digit(idx, src_site) == 1 && res.reg.digit(idx, tgt_site) == 1 ? phi : 0.0;
            });
        }
    }
    return res;
}

std::vector<cplx> dft_target(const std::vector<int>& a) {
    const int m = static_cast<int>(a.size());
    double av = 0.0;
    for (int b : a) av = 2 * av + b;
    const std::size_t dim = std::size_t(1) << m;
    std::vector<cplx> out(dim);
    for (std::size_t t = 0; t < dim; ++t) {
        double y = 0.0;
        for (int k = 1; k <= m; ++k) y += double((t >> (m - k)) & 1u) * std::pow(2.0, k - 1);
        out[t] = std::pow(kInvSqrt2, m) * std::exp(I * (2 * kPi * av * y / double(dim)));
    }
    return out;
}

// ---------------------------------------------------------------- sparse

SparseRegister::SparseRegister(int sites) : sites_(sites) {
    if (sites < 1 || sites > 192) throw ValidationError("SparseRegister: 1..192 sites supported");
}

SparseRegister::Key SparseRegister::key(const std::vector<int>& bits) const {
    if (static_cast<int>(bits.size()) != sites_) throw GeometryMismatch("SparseRegister: bit count mismatch");
    Key k{0, 0, 0};
    for (int s = 0; s < sites_; ++s)
        if (bits[s]) k[s / 64] |= std::uint64_t(1) << (s % 64);
    return k;
}

void SparseRegister::add(const std::vector<int>& bits, cplx amplitude) { amps_[key(bits)] += amplitude; }

cplx SparseRegister::amplitude(const std::vector<int>& bits) const {
    auto it = amps_.find(key(bits));
    return it == amps_.end() ? cplx(0.0) : it->second;
}

void SparseRegister::pair_phase(const std::vector<std::pair<int, int>>& pairs, double phi) {
    for (auto& [k, a] : amps_) {
        int count = 0;
        for (auto [x, y] : pairs) count += bit(k, x) == 0 && bit(k, y) == 1;
        if (count) a *= std::exp(I * (phi * count));
    }
}

std::vector<std::pair<int, int>> level2_pairs() {
    std::vector<std::pair<int, int>> p;
    for (int i = 0; i < 81; ++i) p.emplace_back(i, 81 + i);
    return p;
}

}  // namespace coldgate
