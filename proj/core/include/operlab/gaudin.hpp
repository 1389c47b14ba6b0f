#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "operlab/config.hpp"
#include "operlab/matrix.hpp"
#include "operlab/repspace.hpp"

namespace operlab {

// G_i and Ghat_i = G_i - mu0_i on a weight sector, in sector coordinates.
template <class T>
struct BasicGaudinMatrices {
  std::vector<DenseMatrix<T>> G;
  std::vector<DenseMatrix<T>> Ghat;
  std::vector<T> mu0;  // sum_{j != i} lambda_i lambda_j / 2(t_i - t_j)
  std::vector<T> t;
  std::vector<T> lambda;
  int n = 0;

  std::size_t dim() const { return G.empty() ? 0 : G.front().rows(); }
};

using GaudinMatrices = BasicGaudinMatrices<cplx>;
using RationalGaudinMatrices = BasicGaudinMatrices<Rational>;

// Omega_ij = -(y_i-y_j)^2 d_i d_j + (y_i-y_j)(lambda_i d_j - lambda_j d_i) + lambda_i lambda_j / 2.
template <class T>
Polynomial<T> apply_omega(int i, int j, const T& li, const T& lj, const Polynomial<T>& p);

template <class T>
BasicGaudinMatrices<T> gaudin_matrices(const BasicGaudinConfig<T>& config, const WeightSector& sector);

GaudinMatrices to_complex(const RationalGaudinMatrices& mats);

struct JointSpectrum {
  std::vector<std::vector<cplx>> eigenvalues;  // mu tuples, lexicographic by (re, im)
  std::vector<Eigen::VectorXcd> eigenvectors;  // one unit vector per tuple
  std::vector<int> multiplicities;
  std::vector<double> residuals;               // max_i |G_i v - mu_i v| / |v|
  double min_gap = 0.0;                        // smallest distance between distinct tuples
  double cross_check = 0.0;                    // disagreement between independent draws
};

struct DiagonalizeOptions {
  double tol = 1e-8;
  int draws = 3;
  std::uint64_t seed = 20240607;
};

// Throws NonDiagonalizable when a Jordan block is detected.
JointSpectrum joint_diagonalize(const GaudinMatrices& mats, const DiagonalizeOptions& opts = {});

// Max commutator norm over pairs.
double max_commutator(const GaudinMatrices& mats);

}  // namespace operlab
