#pragma once
// Shared helpers for the test suite: seeded random diagram generation and
// float-matrix comparison.

#include <random>

#include "dzx/rewrite.hpp"

namespace dzx::testutil {

// Random diagram built by stacking generators onto a wire bundle, keeping
// every intermediate boundary within `max_bound` wires.
inline Diagram random_diagram(std::mt19937& rng, Calculus cal, int max_nodes = 8,
                              int max_bound = 3, bool pi_only = false) {
  auto ri = [&](int n) { return int(rng() % unsigned(n)); };
  int w = ri(max_bound + 1);
  Diagram d = make_identity(w, cal);
  int budget = max_nodes;
  int steps = 8 + ri(8);
  for (int s = 0; s < steps && budget > 0; ++s) {
    Diagram g;
    if (cal == Calculus::ZX) {
      switch (ri(4)) {
        case 0: case 3: {
          int n = ri(3), m = ri(3);
          Angle a = pi_only ? Angle::pi_frac(ri(2), 1) : Angle::pi_frac(ri(8), 4);
          g = make_spider(ri(2) ? Kind::ZSpider : Kind::XSpider, n, m, a);
          break;
        }
        case 1: g = Hd(); break;
        case 2: g = Tri(); break;
      }
    } else {
      switch (ri(8)) {
        case 0: g = zw_gen(Kind::WhiteDot1); break;
        case 1: g = zw_gen(Kind::WhiteDot2); break;
        case 2: g = transpose(zw_gen(Kind::WhiteDot2)); break;
        case 3: g = zw_gen(Kind::BlackDot1); break;
        case 4: g = zw_gen(Kind::BlackDot2); break;
        case 5: g = zw_gen(Kind::Cross); break;
        case 6: g = zw_gen(Kind::Star); break;
        case 7: g = ri(2) ? make_cup(cal) : make_cap(cal); break;
      }
    }
    int gn = g.n_in, gm = g.n_out;
    if (gn > w || w - gn + gm > max_bound) continue;
    if (int(g.nodes.size()) > budget) continue;
    int pos = ri(w - gn + 1);
    Diagram layer = par(make_identity(pos, cal), g, make_identity(w - gn - pos, cal));
    d = seq(layer, d);
    w = w - gn + gm;
    budget -= int(g.nodes.size());
  }
  return d;
}

inline bool close(const Matrix<ApproxScalar>& A, const Matrix<ApproxScalar>& B,
                  double tol = 1e-9) {
  if (A.rows != B.rows || A.cols != B.cols) return false;
  for (size_t i = 0; i < A.data.size(); ++i)
    if (std::abs(A.data[i] - B.data[i]) > tol) return false;
  return true;
}

inline Matrix<ApproxScalar> matmul(const Matrix<ApproxScalar>& A,
                                   const Matrix<ApproxScalar>& B) {
  Matrix<ApproxScalar> C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k)
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
  return C;
}

inline Matrix<ApproxScalar> kron(const Matrix<ApproxScalar>& A,
                                 const Matrix<ApproxScalar>& B) {
  Matrix<ApproxScalar> C(A.rows * B.rows, A.cols * B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      for (int k = 0; k < B.rows; ++k)
        for (int l = 0; l < B.cols; ++l)
          C.at(i * B.rows + k, j * B.cols + l) = A.at(i, j) * B.at(k, l);
  return C;
}

}  // namespace dzx::testutil
