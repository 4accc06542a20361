#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cliffordt/exact.hpp"

namespace cliffordt
{

using CMat4 = Eigen::Matrix<std::complex<double>, 4, 4>;
using CMat2 = Eigen::Matrix<std::complex<double>, 2, 2>;

// J(Φ) = Σ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|), input factor first
struct ChoiMatrix
{
    CMat4 m = CMat4::Zero();
    unsigned precision_bits = 53;
};

struct Interval
{
    double lo = 0, hi = 0;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

ChoiMatrix choi_of_unitary(const UnitVec4 &u);
ChoiMatrix choi_of_unitary(const std::array<double, 4> &u);
ChoiMatrix choi_of_mixture(const std::vector<double> &probs, const std::vector<std::array<double, 4>> &unitaries);

// J(V) − J(U) evaluated from the difference of phase-aligned vectorizations,
// accurate when U is close to V.
CMat4 choi_difference(const UnitVec4 &v, const std::array<Real, 4> &u);

// ½‖A − B‖⋄ with feasible primal/dual certificates. Throws on non-PSD input.
Interval diamond_distance_channel(const ChoiMatrix &a, const ChoiMatrix &b);
// ½‖Δ‖⋄ for a Hermitian Δ with tr_out Δ = 0.
Interval diamond_norm_of_difference(const CMat4 &delta, double tol = 1e-10);

// ½‖Σ p_x (J(V) − J(U_x))‖⋄ for a fixed distribution.
Interval mixture_distance(const UnitVec4 &v, const std::vector<ExactUnitary> &support, const std::vector<double> &probs);

struct MixtureSolution
{
    std::vector<GateWord> support;
    std::vector<ExactUnitary> unitaries;
    std::vector<double> probs;
    Interval eps_star;
    bool converged = true;
    unsigned t = 0;
    std::uint64_t candidates_visited = 0; // lattice points examined by the enumerations
};

// Distribution over the support minimizing the diamond distance of the mixture to V.
// Members that receive probability zero are left out of the result.
MixtureSolution solve_mixing(const UnitVec4 &v, const std::vector<ExactUnitary> &support, double tol = 1e-10);

// ---- solver core, exposed for tests ----

// min bᵀy s.t. Σ yᵢ Aᵢ − C ⪰ 0 over block-diagonal symmetric matrices; diagonal
// blocks hold only their diagonal.
struct SdpProblem
{
    struct Block
    {
        int n = 0;
        bool diag = false;
    };
    std::vector<Block> blocks;
    // A[i][b]: n×n (dense block) or n×1 (diagonal block); empty matrix means zero
    std::vector<std::vector<Eigen::MatrixXd>> A;
    std::vector<Eigen::MatrixXd> C;
    Eigen::VectorXd b;
};

struct SdpResult
{
    Eigen::VectorXd y;
    std::vector<Eigen::MatrixXd> X, S;
    double primal = 0, dual = 0; // ⟨C,X⟩ and bᵀy
    bool converged = false;
    int iterations = 0;
};

SdpResult solve_sdp(const SdpProblem &p, double tol = 1e-10, int max_iter = 100);

} // namespace cliffordt
