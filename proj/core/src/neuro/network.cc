// Copyright 2026 The d3qn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "d3qn/neuro/network.h"

#include <cmath>
#include <utility>

#include "d3qn/errors.h"

namespace d3qn::neuro {

template <typename T>
Network<T>::Network(NetworkSpec spec) : spec_(std::move(spec)) {
  spec_.Validate();
  for (const LayerSpec& layer : spec_.trunk) flat_specs_.push_back(layer);
  for (const auto& head : spec_.heads) {
    head_offsets_.push_back(flat_specs_.size());
    for (const LayerSpec& layer : head) flat_specs_.push_back(layer);
  }
  head_sizes_ = spec_.HeadOutputSizes();
  output_size_ = spec_.OutputSize();

  layers_.resize(flat_specs_.size());
  for (std::size_t i = 0; i < flat_specs_.size(); ++i) {
    const LayerSpec& s = flat_specs_[i];
    if (s.kind == LayerKind::kDense) {
      layers_[i].weight = Matrix<T>::Zero(s.out, s.in);
      layers_[i].bias = Vector<T>::Zero(s.out);
    } else if (s.kind == LayerKind::kConv1d) {
      layers_[i].weight = Matrix<T>::Zero(s.out_ch, s.filter_len * s.in_ch);
      layers_[i].bias = Vector<T>::Zero(s.out_ch);
    }
  }
}

template <typename T>
void Network<T>::InitHeUniform(std::mt19937_64& rng) {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    LayerParams<T>& p = layers_[i];
    if (p.weight.size() == 0) continue;
    const double fan_in = static_cast<double>(p.weight.cols());
    std::uniform_real_distribution<double> dist(-std::sqrt(6.0 / fan_in),
                                                std::sqrt(6.0 / fan_in));
    for (Eigen::Index c = 0; c < p.weight.cols(); ++c) {
      for (Eigen::Index r = 0; r < p.weight.rows(); ++r) {
        p.weight(r, c) = static_cast<T>(dist(rng));
      }
    }
    p.bias.setZero();
  }
  BumpVersion();
}

template <typename T>
Matrix<T> Network<T>::ForwardStack(std::size_t first, std::size_t count,
                                   const Matrix<T>& input,
                                   Tape<T>* tape) const {
  Matrix<T> x = input;
  for (std::size_t i = first; i < first + count; ++i) {
    const LayerSpec& s = flat_specs_[i];
    const LayerParams<T>& p = layers_[i];
    Matrix<T> y;
    switch (s.kind) {
      case LayerKind::kDense:
        y.noalias() = p.weight * x;
        y.colwise() += p.bias;
        break;
      case LayerKind::kRelu:
        y = x.cwiseMax(T(0));
        break;
      case LayerKind::kConv1d: {
        const int window = s.filter_len * s.in_ch;
        const int out_len =
            (static_cast<int>(x.rows()) / s.in_ch - s.filter_len) / s.stride + 1;
        y.resize(static_cast<Eigen::Index>(out_len) * s.out_ch, x.cols());
        for (int k = 0; k < out_len; ++k) {
          y.middleRows(k * s.out_ch, s.out_ch).noalias() =
              p.weight * x.middleRows(k * s.stride * s.in_ch, window);
          y.middleRows(k * s.out_ch, s.out_ch).colwise() += p.bias;
        }
        break;
      }
    }
    if (tape) tape->layer_inputs[i] = std::move(x);
    x = std::move(y);
  }
  return x;
}

template <typename T>
Matrix<T> Network<T>::Forward(const Matrix<T>& input, Tape<T>* tape) const {
  if (input.rows() != spec_.input_size) {
    throw ConfigError("network expects " + std::to_string(spec_.input_size) +
                      " inputs, got " + std::to_string(input.rows()));
  }
  if (tape) {
    tape->layer_inputs.assign(layers_.size(), Matrix<T>());
    tape->owner = this;
    tape->version = version_;
  }
  Matrix<T> trunk_out = ForwardStack(0, spec_.trunk.size(), input, tape);
  if (spec_.heads.empty()) return trunk_out;

  Matrix<T> out(output_size_, input.cols());
  Eigen::Index row = 0;
  for (std::size_t h = 0; h < spec_.heads.size(); ++h) {
    out.middleRows(row, head_sizes_[h]) =
        ForwardStack(head_offsets_[h], spec_.heads[h].size(), trunk_out, tape);
    row += head_sizes_[h];
  }
  return out;
}

template <typename T>
Matrix<T> Network<T>::BackwardStack(std::size_t first, std::size_t count,
                                    const Tape<T>& tape, Matrix<T> grad,
                                    Gradients<T>& grads) const {
  for (std::size_t i = first + count; i-- > first;) {
    const LayerSpec& s = flat_specs_[i];
    const LayerParams<T>& p = layers_[i];
    const Matrix<T>& x = tape.layer_inputs[i];
    Matrix<T> dx;
    switch (s.kind) {
      case LayerKind::kDense:
        grads[i].weight.noalias() += grad * x.transpose();
        grads[i].bias += grad.rowwise().sum();
        dx.noalias() = p.weight.transpose() * grad;
        break;
      case LayerKind::kRelu:
        dx = (x.array() > T(0)).select(grad, T(0));
        break;
      case LayerKind::kConv1d: {
        const int window = s.filter_len * s.in_ch;
        const int out_len = static_cast<int>(grad.rows()) / s.out_ch;
        dx = Matrix<T>::Zero(x.rows(), x.cols());
        for (int k = 0; k < out_len; ++k) {
          const auto g = grad.middleRows(k * s.out_ch, s.out_ch);
          const auto xk = x.middleRows(k * s.stride * s.in_ch, window);
          grads[i].weight.noalias() += g * xk.transpose();
          grads[i].bias += g.rowwise().sum();
          dx.middleRows(k * s.stride * s.in_ch, window).noalias() +=
              p.weight.transpose() * g;
        }
        break;
      }
    }
    grad = std::move(dx);
  }
  return grad;
}

template <typename T>
Gradients<T> Network<T>::Backward(const Tape<T>& tape,
                                  const Matrix<T>& output_grad,
                                  Matrix<T>* input_grad) const {
  if (tape.owner != this || tape.layer_inputs.size() != layers_.size()) {
    throw UsageError("Backward: tape was recorded by a different network");
  }
  if (tape.version != version_) {
    throw UsageError("Backward: stale tape, parameters changed since Forward");
  }
  if (output_grad.rows() != output_size_) {
    throw ConfigError("Backward: output gradient has wrong row count");
  }
  Gradients<T> grads = ZeroGradients();
  Matrix<T> trunk_grad;
  if (spec_.heads.empty()) {
    trunk_grad = output_grad;
  } else {
    const Eigen::Index trunk_rows =
        tape.layer_inputs[head_offsets_[0]].rows();
    trunk_grad = Matrix<T>::Zero(trunk_rows, output_grad.cols());
    Eigen::Index row = 0;
    for (std::size_t h = 0; h < spec_.heads.size(); ++h) {
      trunk_grad += BackwardStack(head_offsets_[h], spec_.heads[h].size(), tape,
                                  output_grad.middleRows(row, head_sizes_[h]),
                                  grads);
      row += head_sizes_[h];
    }
  }
  Matrix<T> dx =
      BackwardStack(0, spec_.trunk.size(), tape, std::move(trunk_grad), grads);
  if (input_grad) *input_grad = std::move(dx);
  return grads;
}

template <typename T>
Gradients<T> Network<T>::ZeroGradients() const {
  Gradients<T> grads(layers_.size());
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    grads[i].weight =
        Matrix<T>::Zero(layers_[i].weight.rows(), layers_[i].weight.cols());
    grads[i].bias = Vector<T>::Zero(layers_[i].bias.size());
  }
  return grads;
}

template <typename T>
std::int64_t Network<T>::NumParameters() const {
  std::int64_t n = 0;
  for (const auto& p : layers_) n += p.weight.size() + p.bias.size();
  return n;
}

template <typename T>
bool Network<T>::AllFinite() const {
  for (const auto& p : layers_) {
    if (!p.weight.allFinite() || !p.bias.allFinite()) return false;
  }
  return true;
}

template class Network<float>;
template class Network<double>;

}  // namespace d3qn::neuro
