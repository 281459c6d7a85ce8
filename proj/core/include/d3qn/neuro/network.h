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

#ifndef D3QN_NEURO_NETWORK_H_
#define D3QN_NEURO_NETWORK_H_

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "d3qn/neuro/layer_spec.h"

namespace d3qn::neuro {

template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

// Weight and bias of one layer. Dense: weight is out x in. Conv1d: weight is
// out_ch x (filter_len * in_ch). Both are empty for parameter-free layers.
template <typename T>
struct LayerParams {
  Matrix<T> weight;
  Vector<T> bias;
};

template <typename T>
using Gradients = std::vector<LayerParams<T>>;

// Activations recorded by Network::Forward for a later Backward.
template <typename T>
struct Tape {
  std::vector<Matrix<T>> layer_inputs;  // one per flattened layer
  const void* owner = nullptr;
  std::uint64_t version = 0;
};

// Trunk plus parallel heads over column-batched inputs (features x batch).
// Layers are stored flattened: trunk first, then each head in order; the
// same order is used for gradients, optimizer moments and checkpoints.
template <typename T>
class Network {
 public:
  Network() = default;
  explicit Network(NetworkSpec spec);

  const NetworkSpec& spec() const { return spec_; }
  int input_size() const { return spec_.input_size; }
  int output_size() const { return output_size_; }

  // He-uniform weights (bound sqrt(6 / fan_in)), zero biases.
  void InitHeUniform(std::mt19937_64& rng);

  // Throws ConfigError when input rows do not match the input size.
  Matrix<T> Forward(const Matrix<T>& input, Tape<T>* tape = nullptr) const;

  // Reverse-mode pass for d(loss)/d(output) = output_grad. Throws UsageError
  // for a tape recorded by another network or before a parameter update.
  Gradients<T> Backward(const Tape<T>& tape, const Matrix<T>& output_grad,
                        Matrix<T>* input_grad = nullptr) const;

  Gradients<T> ZeroGradients() const;

  std::vector<LayerParams<T>>& layers() { return layers_; }
  const std::vector<LayerParams<T>>& layers() const { return layers_; }
  const LayerSpec& layer_spec(std::size_t flat_index) const {
    return flat_specs_[flat_index];
  }
  std::size_t num_layers() const { return layers_.size(); }
  std::int64_t NumParameters() const;
  bool AllFinite() const;

  std::uint64_t version() const { return version_; }
  void BumpVersion() { ++version_; }

  template <typename U>
  Network<U> Cast() const {
    Network<U> out(spec_);
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      out.layers()[i].weight = layers_[i].weight.template cast<U>();
      out.layers()[i].bias = layers_[i].bias.template cast<U>();
    }
    return out;
  }

 private:
  Matrix<T> ForwardStack(std::size_t first, std::size_t count,
                         const Matrix<T>& input, Tape<T>* tape) const;
  Matrix<T> BackwardStack(std::size_t first, std::size_t count,
                          const Tape<T>& tape, Matrix<T> grad,
                          Gradients<T>& grads) const;

  NetworkSpec spec_;
  std::vector<LayerSpec> flat_specs_;
  std::vector<std::size_t> head_offsets_;
  std::vector<int> head_sizes_;
  std::vector<LayerParams<T>> layers_;
  int output_size_ = 0;
  std::uint64_t version_ = 0;
};

extern template class Network<float>;
extern template class Network<double>;

}  // namespace d3qn::neuro

#endif  // D3QN_NEURO_NETWORK_H_
