#pragma once

// Independent reference implementations used only by the test suite. Gate
// action, cost assembly, and the classical solvers are all rebuilt here from
// dense Eigen linear algebra so that agreement with the library is a real
// cross-check, not the same code run twice.

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sgeo/circuit.hpp"
#include "sgeo/dense.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

Mat kron(const Mat& a, const Mat& b);

Eigen::Matrix2cd ry2(double angle);
Eigen::Matrix2cd h2();
Eigen::Matrix2cd x2();
Eigen::Matrix2cd pauli2(char letter);

// Qubit q is bit q of the basis label (qubit 0 least significant).
Mat embed1(int n, int q, const Eigen::Matrix2cd& g);
Mat cnot_mat(int n, int control, int target);
Mat pauli_rot_mat(int n, const std::string& pauli, const std::vector<int>& targets, double angle);
Mat adder_mat(int n, int direction);
Mat diag_mat(const std::vector<double>& d);
Mat prep_mat(const std::vector<double>& s);

Mat gate_matrix(const sgeo::Gate& g, int n);
Mat circuit_matrix(const sgeo::Circuit& c);
Vec circuit_state(const sgeo::Circuit& c);

// Layered hardware-style circuit rebuilt from scratch: RY column, CNOT
// ladder, repeated `depth` times, then a final RY column. angles index is
// layer * n + qubit.
Mat ansatz_matrix(int n, int depth, const std::vector<double>& angles);
RVec ansatz_state_vec(int n, int depth, const std::vector<double>& angles);

// Central finite differences, fourth-order accurate, orders 1..4.
double fd_derivative(const std::function<double(double)>& f, double x, int order, double h);

// Dense explicit-Euler step operator for the viscous fluid scheme acting on
// the normalized field: L = lam I + l1 (S + St - 2I) - l2 D (S - St) with
// (S u)_i = u_{i+1}, l1 = lam tau nu / (2 dx^2), l2 = lam^2 tau / (2 dx),
// D = diag(psi_prev). Applying L to psi_prev gives the updated raw field.
RMat fluid_step_matrix(const std::vector<double>& psi_prev, double lam_prev, double nu, double tau,
                       double dx);
std::vector<double> euler_step(const std::vector<double>& u, double nu, double tau, double dx);

// Discrete trap/interaction/kinetic energy of a unit-norm field, evaluated
// through the dense quadratic form rather than index arithmetic.
double trapped_energy(const std::vector<double>& psi, const std::vector<double>& v, double g,
                      double dx);

struct LinearGround {
  double energy = 0.0;
  std::vector<double> psi;
};
// Smallest eigenpair of the g = 0 Hamiltonian (kinetic stencil plus trap).
LinearGround linear_ground(const std::vector<double>& v, double dx);

Mat to_eigen(const sgeo::CMat& m);
double max_abs(const Mat& m);

std::vector<double> random_unit(std::mt19937_64& rng, int dim);
std::vector<double> random_angles(std::mt19937_64& rng, int count);

}  // namespace oracle
