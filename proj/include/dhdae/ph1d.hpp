#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dhdae/field.hpp"
#include "dhdae/pencil.hpp"

namespace dhdae {

// E xdot = (P1 d/dzeta + G0) Q x on [0, 1] with W_B [e(1); e(0)] = 0 for the effort e = Q x.
// E = diag(E1, 0) and Q are diagonal, one coefficient per component.
struct Ph1dSystem {
    Mat P1;                          // n x n, real symmetric, invertible
    MatrixField G0;                  // n x n, dissipative pointwise
    Mat WB;                          // n x 2n, full row rank
    Index n1 = 0, n2 = 0;
    std::vector<ScalarField> e1;     // diagonal of E1, size n1
    std::vector<ScalarField> q;      // diagonal of Q = diag(Q1, Q2), size n
    std::vector<Index> node_components;  // optional: components placed on grid nodes

    Index n() const { return n1 + n2; }
    Mat E1diag(double zeta) const;
    Mat Q1diag(double zeta) const;
    Mat Q2diag(double zeta) const;
    // diag(E1 Q1^{-1}, 0) at zeta
    Mat effort_mass(double zeta) const;
    void validate(double tol = 1e-10) const;
};

bool check_wb_dissipative(const Mat& P1, const Mat& WB, double tol = 1e-10);

struct ShootingResult {
    Mat Psi;              // transfer matrix from zeta = 0 to zeta = 1
    Mat boundary_matrix;  // W_B1 Psi + W_B2
    Complex det;
    double sigma_min = 0.0, sigma_max = 0.0;
    bool regular = false;
};

// RK4 on P1 X' = (s E Q^{-1} - G0) X, X(0) = I.
ShootingResult fundamental_matrix(const Ph1dSystem& sys, Complex s, int steps = 512, double tol = 1e-8);

// Staggered grid: N interior nodes, N + 1 cells, h = 1/(N + 1). Components on nodes
// carry interior node values plus boundary degrees of freedom parameterized from ker W_B;
// components on cells carry cell values. Everything is scaled by 1/h.
struct Discretization {
    struct Component {
        bool on_nodes = false;
        bool in_x1 = false;
        std::vector<double> zeta;  // interior positions
        std::vector<Index> index;  // slot of each interior value
    };
    struct BoundaryDof {
        Index index = 0;           // slot
        bool in_x1 = false;
        Vec weights;               // column of the trace parameterization over node traces
    };

    BlockDhdae system;
    Index N = 0;
    double h = 0.0;
    std::vector<Component> comps;
    std::vector<BoundaryDof> boundary;
    std::vector<std::pair<Index, int>> node_traces;  // (component, end) with end 1 = right, 0 = left
    std::vector<ScalarField> q;

    // (zeta, slot) for every grid value of a component, including boundary dofs that
    // represent a single trace of that component.
    std::vector<std::pair<double, Index>> grid_dofs(Index comp) const;
    // State vector from per-component profiles of the state (not the effort).
    Vec sample_state(const std::vector<std::function<Complex(double)>>& profiles) const;
};

Discretization discretize_full(const Ph1dSystem& sys, Index N, const Tolerances& tol = {});
BlockDhdae discretize(const Ph1dSystem& sys, Index N, const Tolerances& tol = {});

// First order form of x1' = P2 x1'' + P11-coupled terms: P1 = [[P11, I], [I, 0]],
// G0 = [[P0, 0], [0, -P2^{-1}]], W_B = W~_B diag(I, P2^{-1}, I, P2^{-1}).
Ph1dSystem second_order_lift(const Mat& P2, const Mat& P11, const Mat& P0, const Mat& WBtilde);

// Two-component system with x2 = (1/(r q2)) x1' and the decoupled boundary rows
// alpha1 e1(1) + beta1 e2(1) = 0, alpha2 e1(0) + beta2 e2(0) = 0.
Ph1dSystem sturm_liouville_system(ScalarField e1, ScalarField r, ScalarField g0, ScalarField q2, double alpha1,
                                  double beta1, double alpha2, double beta2);

// x1' = (1/mass) ((flux x1')' - potential x1) with flux = 1/r and Robin or Dirichlet ends.
struct SturmLiouvilleForm {
    ScalarField mass, flux, potential;
    Mat WB;  // rows on (x1(1), flux x1'(1), x1(0), flux x1'(0))

    // Direct finite-difference operator on the free nodes in increasing zeta.
    Mat operator_matrix(Index N) const;
    std::vector<double> free_nodes(Index N) const;
};

SturmLiouvilleForm sturm_liouville_form(const Ph1dSystem& sys);

// Wave coupled to heat through the boundary (four components, n1 = 3).
Ph1dSystem coupled_wave_heat(double rho, double T, double r);

}  // namespace dhdae
