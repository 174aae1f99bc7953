#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "coldgate/numerics.hpp"

namespace coldgate {

/// Statevector over a 2D site grid, row-major; site 0 is the most significant digit.
/// A site holds a qubit {0,1} or, with the transport level enabled, a qutrit {0,1,r=2}.
class LatticeRegister {
public:
    static constexpr int kMaxQubits = 20;

    LatticeRegister(int lx, int ly = 1, std::vector<int> levels = {}, std::vector<bool> occupied = {});

    int lx() const { return lx_; }
    int ly() const { return ly_; }
    int sites() const { return lx_ * ly_; }
    int levels(int site) const { return levels_[site]; }
    bool occupied(int site) const { return occupied_[site]; }
    std::size_t dimension() const { return state_.size(); }
    int site_at(int x, int y) const { return y * lx_ + x; }

    const std::vector<cplx>& state() const { return state_; }
    void set_state(std::vector<cplx> s);
    int digit(std::size_t index, int site) const { return static_cast<int>((index / stride_[site]) % levels_[site]); }
    std::size_t index_of(const std::vector<int>& digits) const;

    /// Resets to a computational basis state (all zeros when empty).
    void reset(const std::vector<int>& digits = {});
    double norm() const;

    /// Multiplies each amplitude by exp(i * phase(index)).
    template <class F>
    void apply_phase(F&& phase) {
        for (std::size_t k = 0; k < state_.size(); ++k) {
            const double p = phase(k);
            if (p != 0.0) state_[k] *= std::polar(1.0, p);
        }
    }

    /// Applies a 2x2 unitary on the {0, upper} subspace of a site.
    void apply_1q(int site, const std::array<cplx, 4>& u, int upper = 1);

    /// Projective measurement in the computational basis; collapses the state.
    std::vector<int> measure(const std::vector<int>& sites, std::mt19937_64& rng);
    /// Probability that a site is found in level 1.
    double excitation(int site) const;

    std::string to_json() const;

private:
    int lx_, ly_;
    std::vector<int> levels_;
    std::vector<bool> occupied_;
    std::vector<std::size_t> stride_;
    std::vector<cplx> state_;
};

enum class Gate { H, X, Y, Z, R90, R270, Phase };

std::array<cplx, 4> gate_matrix(Gate g, double lambda = 0.0);
void single_qubit(LatticeRegister& reg, int site, Gate g, double lambda = 0.0);

/// Collision phases for the other adjacency patterns when atoms are shifted in the plane
/// instead of lifted; index by (left, right) digits 00, 11, 10.
struct PlanarPhases {
    double p00 = 0.0, p11 = 0.0, p10 = 0.0;
};

/// Horizontal shift: each (0,1) pair of row neighbours (x, x+1) picks up exp(-i phases[x+1]).
void apply_lx(LatticeRegister& reg, const std::vector<double>& phases, const PlanarPhases* planar = nullptr);
void apply_lx(LatticeRegister& reg, double phi);
/// Vertical shift: upper 0 over lower 1 picks up exp(-i phases[lower]).
void apply_ly(LatticeRegister& reg, const std::vector<double>& phases, const PlanarPhases* planar = nullptr);
void apply_ly(LatticeRegister& reg, double phi);

// ---- Ramsey ensembles ----

/// pulse, LX(phi), pulse on every occupied site.
void ramsey_sequence(LatticeRegister& reg, double phi);

struct FillCensus {
    int sites = 0, atoms = 0;
    std::map<int, long> clusters;  // run length along rows -> count
    double frequency(int size) const { return sites ? double(clusters.count(size) ? clusters.at(size) : 0) / sites : 0.0; }
};

struct RandomFill {
    int lx = 0, ly = 0;
    std::vector<bool> occupied;
    FillCensus census;
};

RandomFill random_fill(int lx, int ly, double eta, std::uint64_t seed);
/// Expected number of atoms in |1> for a row cluster of `size` atoms after ramsey_sequence(phi).
double cluster_bright_count(int size, double phi);
/// Expected bright atoms per site for a filled lattice after ramsey_sequence(phi).
double bright_fraction(const FillCensus& census, double phi);
/// Least-squares slope of log(frequency/(1-eta)^2) versus log(eta) for one cluster size.
double cluster_exponent(const std::vector<double>& etas, const std::vector<double>& frequencies);

// ---- Shor memory ----

/// 3x3 block with the central site holding alpha|0> + beta|1>, all others |0>.
LatticeRegister shor_bare(cplx alpha, cplx beta);
/// ENC/DEC acting on the first nine sites of a 3x3 register. `lx_phase` is the collision
/// phase used by every lattice shift (pi in the ideal sequence).
void shor_encode(LatticeRegister& reg, double lx_phase = kPi);
void shor_decode(LatticeRegister& reg, double lx_phase = kPi);
/// Codewords produced by ENC on the bare block (bit 0 or 1).
std::vector<cplx> shor_codeword(int bit);
/// Textbook Shor codewords (000 +- 111)^{x3}.
std::vector<cplx> standard_shor_codeword(int bit);

enum class Residual { a0_plus_b1, a0_minus_b1, a1_minus_b0, a1_plus_b0 };
std::string residual_name(Residual r);
/// Unitary restoring alpha|0> + beta|1> from the residual.
std::array<cplx, 4> correction_for(Residual r);

struct PauliError {
    char axis = 0;  // 'x', 'y', 'z' or 0 for none
    int site = 0;   // 1..9
    std::string name() const;
};

struct SyndromeRecord {
    PauliError error;
    std::array<int, 8> bits{};  // sites 1,2,3,4,6,7,8,9
    std::array<cplx, 2> central{};
    Residual residual = Residual::a0_plus_b1;
    double residual_fidelity = 0.0;
    std::string syndrome_string() const;  // "abc de fgh"
};

/// Applies DEC, reads the syndrome (must be a basis state) and classifies the central residual.
SyndromeRecord shor_decode_and_syndrome(LatticeRegister& reg, cplx alpha, cplx beta, double lx_phase = kPi);

/// Encode, apply every single-site Pauli error (plus the error-free case first), decode.
std::vector<SyndromeRecord> syndrome_table(cplx alpha, cplx beta, double lx_phase = kPi);
/// CSV with header error,syndrome,central for the 27 error rows.
std::string syndrome_table_csv(const std::vector<SyndromeRecord>& rows);

/// Correction chosen from the syndrome alone (first matching table row).
Residual decode_syndrome(const std::array<int, 8>& bits, const std::vector<SyndromeRecord>& table);

void apply_pauli(LatticeRegister& reg, const PauliError& e, int offset = 0);

// ---- Fault-tolerant CNOT and Armada ----

enum class ClosingPulse { hadamard, sign_free };

struct LogicalMap {
    std::array<std::array<cplx, 4>, 4> m{};  // m[out][in], basis |00>,|01>,|10>,|11> (block 1, block 2)
    double leakage = 0.0;                    // worst norm outside the logical space
};

/// Two blocks stacked as a 9x2 register: block 1 on row 0, block 2 on row 1. Block 2 gets
/// the pulses; collisions give exp(i pi) whenever block 1 holds 0 and block 2 holds 1.
void ft_cnot(LatticeRegister& reg, ClosingPulse closing);
LogicalMap ft_cnot_logical(ClosingPulse closing);

enum class ParityKind { spin_flip, phase_flip };

struct ParityOutcome {
    std::vector<int> parities;    // one per checked row (spin flip) or row pair (phase flip)
    std::vector<int> ancilla_bits;
    double block_fidelity = 0.0;  // |<block before|block after>|^2
};

/// Armada check on a 9-atom block state. Spin flip: a 3x2 ancilla array (|00>+|11>)^3 meets
/// the block columns `columns` of each row. Phase flip: |000000>+|111111> meets rows `rows`
/// after H on every block atom.
ParityOutcome armada_parity_check(const std::vector<cplx>& block, ParityKind kind, std::array<int, 2> pair,
                                  std::uint64_t seed);

// ---- Sweep operations ----

/// Selected atom (three levels) is swept along the string; its r branch gives string atom j
/// exp(i phases[j]) on |1> and exp(i phases0[j]) on |0>.
void sweep(LatticeRegister& reg, int selected, const std::vector<int>& string_sites, const std::vector<double>& phases,
           const std::vector<double>& phases0 = {});

/// N-atom sweep from the product input; returns the (N+1)-site register with the selected atom first.
LatticeRegister sweep_product(int n, const std::vector<double>& phases);
/// H on string atoms and r relabelled as 1; output is a plain qubit register.
LatticeRegister ghz_standard_form(const LatticeRegister& swept);
double ghz_fidelity(const LatticeRegister& reg);

struct QftStep {
    int step, source, target;  // 1-based atom labels
    double phase;
};

struct QftResult {
    LatticeRegister reg;          // source (sites 0..m-1) then target (m..2m-1)
    std::vector<QftStep> schedule;
    double global_phase = 0.0;    // Phi(a); zero without spurious collisions
};

QftResult sweep_qft(const std::vector<int>& source_bits);
/// Target amplitudes of the DFT of integer a = sum a_l 2^{m-l}, bit-reversed target order.
std::vector<cplx> dft_target(const std::vector<int>& source_bits);

// ---- Level-2 concatenation bookkeeping ----

/// Sparse statevector over up to 192 two-level sites.
class SparseRegister {
public:
    using Key = std::array<std::uint64_t, 3>;
    explicit SparseRegister(int sites);
    int sites() const { return sites_; }
    void add(const std::vector<int>& bits, cplx amplitude);
    cplx amplitude(const std::vector<int>& bits) const;
    std::size_t terms() const { return amps_.size(); }
    /// exp(i phi) on each (first, second) pair holding (0, 1).
    void pair_phase(const std::vector<std::pair<int, int>>& pairs, double phi);
    const std::map<Key, cplx>& data() const { return amps_; }
    static int bit(const Key& k, int site) { return static_cast<int>((k[site / 64] >> (site % 64)) & 1u); }

private:
    int sites_;
    std::map<Key, cplx> amps_;
    Key key(const std::vector<int>& bits) const;
};

/// Site pairs coupled by the level-2 shift between two 81-site blocks laid out consecutively.
std::vector<std::pair<int, int>> level2_pairs();

}  // namespace coldgate
