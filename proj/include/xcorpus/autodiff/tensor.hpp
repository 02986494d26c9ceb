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

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "xcorpus/autodiff/params.hpp"
#include "xcorpus/core/types.hpp"

namespace xcorpus::ad {

class Tape;

/// Handle to a value recorded on a tape. Cheap to copy; valid while the
/// tape lives.
class Tensor {
 public:
  Tensor() = default;
  Tensor(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  const Matrix& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  bool defined() const { return tape_ != nullptr; }
  bool is_scalar() const { return rows() == 1 && cols() == 1; }
  double scalar() const;
  bool requires_grad() const;

  Tape& tape() const { return *tape_; }
  std::size_t id() const { return id_; }

 private:
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Reverse-mode tape over dense matrices. Nodes are appended in evaluation
/// order, so inputs always precede their consumers and backward is a single
/// reverse sweep.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, const Matrix& grad_out)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Tensor constant(Matrix value);
  Tensor scalar_constant(double value);

  /// Leaf bound to a stored parameter. Repeated calls with the same name
  /// return the same node. Frozen parameters are recorded as constants.
  Tensor param(const ParamStore& store, const std::string& name);

  /// Records the result of a primitive. `backward` receives dL/d(output)
  /// and must call accumulate() for each input that requires a gradient.
  Tensor record(Matrix value, bool requires_grad, BackwardFn backward);

  /// Gradients of `loss` with respect to every non-frozen bound parameter.
  /// Clears all previous node gradients first, so repeated calls agree.
  Gradients backward(const Tensor& loss);

  void accumulate(std::size_t id, const Matrix& grad);

  const Matrix& value(std::size_t id) const { return nodes_[id].value; }
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool has_grad = false;
    bool requires_grad = false;
    BackwardFn backward;
  };

  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> param_nodes_;
};

}  // namespace xcorpus::ad
