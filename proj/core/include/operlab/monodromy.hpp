#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "operlab/oper.hpp"

namespace operlab {

using Mat2 = Eigen::Matrix2cd;

struct TransportOptions {
  double tol = 1e-10;     // local error target of the Runge-Kutta-Fehlberg 7(8) stepper
  double margin = 1e-6;   // minimal allowed distance from the path to a singular point
};

// A path piece: straight segment a -> b, or an arc of the circle |z - center| = radius from angle
// theta0 to theta1 (counterclockwise when theta1 > theta0).
struct PathPiece {
  enum class Kind { Line, Arc } kind = Kind::Line;
  cplx a, b;
  cplx center;
  double radius = 0.0, theta0 = 0.0, theta1 = 0.0;

  static PathPiece line(cplx from, cplx to);
  static PathPiece arc(cplx center, double radius, double theta0, double theta1);
  cplx start() const;
  cplx end() const;
};

// Transfer matrix of psi'' = v psi acting on (psi, psi') along a polyline.
Mat2 transport(const Oper& oper, const std::vector<cplx>& polyline, const TransportOptions& opts = {});
Mat2 transport(const Oper& oper, const std::vector<PathPiece>& path, const TransportOptions& opts = {});

struct LoopPolicy {
  std::optional<cplx> basepoint;  // default: centroid + i * diameter
  double radius_fraction = 0.25;  // of the minimal gap between marked points
  TransportOptions transport;
};

struct MonodromyData {
  cplx basepoint;
  std::vector<Mat2> generators;  // counterclockwise loops around t_0..t_m
  std::vector<Mat2> local;       // the same loops in the (psi, psi') frame at each circle entry point
  Mat2 infinity;                 // clockwise loop enclosing every finite point
  std::vector<std::size_t> order;  // composition order closing the pi_1 relation
  double pi1_residual = 0.0;     // |M_inf * M_{order[k]} ... M_{order[0]} - Id| / max(1, prod |M|_2)
  double det_deviation = 0.0;    // max |det M - 1| / max(1, |M|_2^2)
};

MonodromyData monodromy_generators(const Oper& oper, const LoopPolicy& policy = {});

enum class Verdict { No, Yes, Ambiguous };

struct Classification {
  Verdict trivial_pgl2 = Verdict::No;
  std::vector<Verdict> unipotent;  // per generator
  Verdict solvable = Verdict::No;
  Verdict real_form = Verdict::No;
  bool generic = false;
  double trivial_margin = 0.0;   // max_i min |M_i -+ Id|
  double solvable_margin = 0.0;  // smallest common-eigenvector defect
  double real_margin = 0.0;      // smallest singular value of the invariant-form system
  std::pair<int, int> signature{0, 0};
  Eigen::Matrix2cd form = Eigen::Matrix2cd::Zero();
};

// Margins within a factor 10 of tol are reported as Ambiguous.
Classification classify(const std::vector<Mat2>& generators, double tol = 1e-6);
// Triviality and unipotence are conjugation invariant per generator and are judged on the local frames,
// which avoid the conditioning of the legs to the basepoint; solvable and real_form use the common frame.
Classification classify(const MonodromyData& mono, double tol = 1e-6);

const char* to_string(Verdict v);

// Minus the half-sum of the continuations above and below the real singular point t_j, from a to b.
Mat2 principal_value_transport(const Oper& oper, std::size_t j, double a, double b, double radius,
                               const TransportOptions& opts = {});

}  // namespace operlab
