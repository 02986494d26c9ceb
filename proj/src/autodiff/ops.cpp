/* Copyright 2026 The xcorpus Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "xcorpus/autodiff/ops.hpp"

#include <cmath>
#include <sstream>

#include "xcorpus/core/errors.hpp"

namespace xcorpus::ad {
namespace {

std::string shape(const Tensor& t) {
  std::ostringstream os;
  os << t.rows() << "x" << t.cols();
  return os.str();
}

void require_same_tape(const Tensor& a, const Tensor& b) {
  if (&a.tape() != &b.tape()) throw ContractError("operands recorded on different tapes");
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  require_same_tape(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_same_tape(a, b);
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions differ " + shape(a) + " * " + shape(b));
  Tape& t = a.tape();
  const auto ia = a.id(), ib = b.id();
  Matrix v = a.value() * b.value();
  return t.record(std::move(v), a.requires_grad() || b.requires_grad(),
                  [ia, ib](Tape& tp, const Matrix& g) {
                    if (tp.requires_grad(ia)) tp.accumulate(ia, g * tp.value(ib).transpose());
                    if (tp.requires_grad(ib)) tp.accumulate(ib, tp.value(ia).transpose() * g);
                  });
}

Tensor transpose(const Tensor& a) {
  const auto ia = a.id();
  return a.tape().record(a.value().transpose(), a.requires_grad(),
                         [ia](Tape& tp, const Matrix& g) { tp.accumulate(ia, g.transpose()); });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  const auto ia = a.id(), ib = b.id();
  return a.tape().record(a.value() + b.value(), a.requires_grad() || b.requires_grad(),
                         [ia, ib](Tape& tp, const Matrix& g) {
                           tp.accumulate(ia, g);
                           tp.accumulate(ib, g);
                         });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  const auto ia = a.id(), ib = b.id();
  return a.tape().record(a.value() - b.value(), a.requires_grad() || b.requires_grad(),
                         [ia, ib](Tape& tp, const Matrix& g) {
                           tp.accumulate(ia, g);
                           if (tp.requires_grad(ib)) tp.accumulate(ib, -g);
                         });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  const auto ia = a.id(), ib = b.id();
  return a.tape().record(a.value().cwiseProduct(b.value()), a.requires_grad() || b.requires_grad(),
                         [ia, ib](Tape& tp, const Matrix& g) {
                           if (tp.requires_grad(ia)) tp.accumulate(ia, g.cwiseProduct(tp.value(ib)));
                           if (tp.requires_grad(ib)) tp.accumulate(ib, g.cwiseProduct(tp.value(ia)));
                         });
}

Tensor scale(const Tensor& a, double s) {
  const auto ia = a.id();
  return a.tape().record(a.value() * s, a.requires_grad(),
                         [ia, s](Tape& tp, const Matrix& g) { tp.accumulate(ia, g * s); });
}

Tensor add_scalar(const Tensor& a, double s) {
  const auto ia = a.id();
  return a.tape().record((a.value().array() + s).matrix(), a.requires_grad(),
                         [ia](Tape& tp, const Matrix& g) { tp.accumulate(ia, g); });
}

Tensor add_row(const Tensor& x, const Tensor& row) {
  require_same_tape(x, row);
  if (row.rows() != 1 || row.cols() != x.cols())
    throw DimensionError("add_row: expected 1x" + std::to_string(x.cols()) + " row, got " + shape(row));
  const auto ix = x.id(), ir = row.id();
  Matrix v = x.value().rowwise() + row.value().row(0);
  return x.tape().record(std::move(v), x.requires_grad() || row.requires_grad(),
                         [ix, ir](Tape& tp, const Matrix& g) {
                           tp.accumulate(ix, g);
                           if (tp.requires_grad(ir)) tp.accumulate(ir, g.colwise().sum());
                         });
}

Tensor elementwise(const Tensor& x, Unary f) {
  const Matrix& in = x.value();
  Matrix v;
  switch (f) {
    case Unary::kRelu: v = in.cwiseMax(0.0); break;
    case Unary::kSigmoid: v = in.unaryExpr([](double z) {
        // Split by sign to avoid overflow in exp.
        if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
        const double e = std::exp(z);
        return e / (1.0 + e);
      }); break;
    case Unary::kLog: v = in.array().log().matrix(); break;
    case Unary::kAbs: v = in.cwiseAbs(); break;
    case Unary::kNeg: v = -in; break;
    case Unary::kSquare: v = in.cwiseProduct(in); break;
    case Unary::kExp: v = in.array().exp().matrix(); break;
  }
  const auto ix = x.id();
  Tape& t = x.tape();
  const std::size_t out_id = t.size();
  return t.record(std::move(v), x.requires_grad(), [ix, out_id, f](Tape& tp, const Matrix& g) {
    const Matrix& in = tp.value(ix);
    const Matrix& out = tp.value(out_id);
    switch (f) {
      case Unary::kRelu:
        tp.accumulate(ix, g.binaryExpr(in, [](double gv, double z) { return z > 0 ? gv : 0.0; }));
        break;
      case Unary::kSigmoid:
        tp.accumulate(ix, (g.array() * out.array() * (1.0 - out.array())).matrix());
        break;
      case Unary::kLog: tp.accumulate(ix, g.cwiseQuotient(in)); break;
      case Unary::kAbs:
        tp.accumulate(ix, g.binaryExpr(in, [](double gv, double z) {
          return z > 0 ? gv : (z < 0 ? -gv : 0.0);
        }));
        break;
      case Unary::kNeg: tp.accumulate(ix, -g); break;
      case Unary::kSquare: tp.accumulate(ix, 2.0 * g.cwiseProduct(in)); break;
      case Unary::kExp: tp.accumulate(ix, g.cwiseProduct(out)); break;
    }
  });
}

Tensor clamp(const Tensor& x, double lo, double hi) {
  const auto ix = x.id();
  Matrix v = x.value().cwiseMax(lo).cwiseMin(hi);
  return x.tape().record(std::move(v), x.requires_grad(), [ix, lo, hi](Tape& tp, const Matrix& g) {
    tp.accumulate(ix, g.binaryExpr(tp.value(ix), [lo, hi](double gv, double z) {
      return (z >= lo && z <= hi) ? gv : 0.0;
    }));
  });
}

Tensor softmax_rows(const Tensor& x) {
  const Matrix& in = x.value();
  Matrix v(in.rows(), in.cols());
  for (Eigen::Index i = 0; i < in.rows(); ++i) {
    const double m = in.row(i).maxCoeff();
    v.row(i) = (in.row(i).array() - m).exp().matrix();
    v.row(i) /= v.row(i).sum();
  }
  const auto ix = x.id();
  Tape& t = x.tape();
  const std::size_t out_id = t.size();
  return t.record(std::move(v), x.requires_grad(), [ix, out_id](Tape& tp, const Matrix& g) {
    const Matrix& y = tp.value(out_id);
    const Vector dot = g.cwiseProduct(y).rowwise().sum();
    tp.accumulate(ix, y.cwiseProduct(g.colwise() - dot));
  });
}

Tensor reduce(const Tensor& x, Reduce how) {
  const double n = static_cast<double>(x.value().size());
  const double factor = (how == Reduce::kMean && n > 0) ? 1.0 / n : 1.0;
  Matrix v(1, 1);
  v(0, 0) = x.value().sum() * factor;
  const auto ix = x.id();
  const auto r = x.rows(), c = x.cols();
  return x.tape().record(std::move(v), x.requires_grad(), [ix, r, c, factor](Tape& tp, const Matrix& g) {
    tp.accumulate(ix, Matrix::Constant(r, c, g(0, 0) * factor));
  });
}

Tensor dropout(const Tensor& x, double p, Mode mode, Rng& rng) {
  if (!(p >= 0.0 && p < 1.0)) throw ConfigError("dropout probability must lie in [0, 1)");
  if (mode == Mode::kEval || p == 0.0) return x;
  const double keep_scale = 1.0 / (1.0 - p);
  Matrix mask(x.rows(), x.cols());
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < mask.cols(); ++j)
    for (Eigen::Index i = 0; i < mask.rows(); ++i) mask(i, j) = uniform01(rng) < p ? 0.0 : keep_scale;
  Matrix v = x.value().cwiseProduct(mask);
  const auto ix = x.id();
  return x.tape().record(std::move(v), x.requires_grad(),
                         [ix, mask = std::move(mask)](Tape& tp, const Matrix& g) {
                           tp.accumulate(ix, g.cwiseProduct(mask));
                         });
}

Tensor grad_reverse(const Tensor& x, double coeff) {
  const auto ix = x.id();
  return x.tape().record(x.value(), x.requires_grad(),
                         [ix, coeff](Tape& tp, const Matrix& g) { tp.accumulate(ix, -coeff * g); });
}

Tensor stop_gradient(const Tensor& x) { return x.tape().constant(x.value()); }

Tensor pairwise_sqdist(const Tensor& a, const Tensor& b) {
  require_same_tape(a, b);
  if (a.cols() != b.cols())
    throw DimensionError("pairwise_sqdist: width mismatch " + shape(a) + " vs " + shape(b));
  // Work on transposed copies so each sample is a contiguous column.
  const Matrix at = a.value().transpose();
  const Matrix bt = b.value().transpose();
  Matrix d(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < bt.cols(); ++j)
    for (Eigen::Index i = 0; i < at.cols(); ++i) d(i, j) = (at.col(i) - bt.col(j)).squaredNorm();
  const auto ia = a.id(), ib = b.id();
  return a.tape().record(std::move(d), a.requires_grad() || b.requires_grad(),
                         [ia, ib](Tape& tp, const Matrix& g) {
                           const Matrix& av = tp.value(ia);
                           const Matrix& bv = tp.value(ib);
                           if (tp.requires_grad(ia)) {
                             const Vector rs = g.rowwise().sum();
                             tp.accumulate(ia, 2.0 * (av.array().colwise() * rs.array()).matrix() - 2.0 * g * bv);
                           }
                           if (tp.requires_grad(ib)) {
                             const Vector cs = g.colwise().sum().transpose();
                             tp.accumulate(ib, 2.0 * (bv.array().colwise() * cs.array()).matrix() -
                                                   2.0 * g.transpose() * av);
                           }
                         });
}

}  // namespace xcorpus::ad
