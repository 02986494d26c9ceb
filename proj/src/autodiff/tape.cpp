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

#include <cmath>

#include "xcorpus/autodiff/tensor.hpp"
#include "xcorpus/core/errors.hpp"

namespace xcorpus::ad {

const Matrix& Tensor::value() const { return tape_->value(id_); }

double Tensor::scalar() const {
  if (!is_scalar()) throw ContractError("tensor is not a scalar");
  return value()(0, 0);
}

bool Tensor::requires_grad() const { return tape_->requires_grad(id_); }

Tensor Tape::constant(Matrix value) { return record(std::move(value), false, nullptr); }

Tensor Tape::scalar_constant(double value) {
  Matrix m(1, 1);
  m(0, 0) = value;
  return constant(std::move(m));
}

Tensor Tape::param(const ParamStore& store, const std::string& name) {
  if (auto it = param_nodes_.find(name); it != param_nodes_.end()) return {this, it->second};
  const Parameter& p = store.at(name);
  Tensor t = record(p.value, !p.frozen, nullptr);
  param_nodes_.emplace(name, t.id());
  return t;
}

Tensor Tape::record(Matrix value, bool requires_grad, BackwardFn backward) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return {this, nodes_.size() - 1};
}

void Tape::accumulate(std::size_t id, const Matrix& grad) {
  Node& n = nodes_[id];
  if (!n.requires_grad) return;
  if (!n.has_grad) {
    n.grad = grad;
    n.has_grad = true;
  } else {
    n.grad += grad;
  }
}

Gradients Tape::backward(const Tensor& loss) {
  if (&loss.tape() != this) throw ContractError("loss belongs to another tape");
  if (!loss.is_scalar()) throw ContractError("backward requires a scalar loss");
  for (auto& n : nodes_) {
    n.has_grad = false;
    n.grad.resize(0, 0);
  }
  Gradients out;
  if (!nodes_[loss.id()].requires_grad) {
    for (const auto& [name, id] : param_nodes_)
      if (nodes_[id].requires_grad) out[name] = Matrix::Zero(nodes_[id].value.rows(), nodes_[id].value.cols());
    return out;
  }
  accumulate(loss.id(), Matrix::Ones(1, 1));
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad || !n.has_grad || !n.backward) continue;
    // Copy: the callback may accumulate into other nodes while we hold it.
    const Matrix g = n.grad;
    n.backward(*this, g);
  }
  for (const auto& [name, id] : param_nodes_) {
    const Node& n = nodes_[id];
    if (!n.requires_grad) continue;
    out[name] = n.has_grad ? n.grad : Matrix::Zero(n.value.rows(), n.value.cols());
  }
  return out;
}

}  // namespace xcorpus::ad
