// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef PBSEP_MLP_HPP_
#define PBSEP_MLP_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pbsep/dataset.hpp"

namespace pbsep {

enum class LossKind { kCrossEntropy, kMeanSquaredError };

LossKind loss_from_string(const std::string& name);
std::string to_string(LossKind loss);

/// One dense layer: out x in weights, per-unit bias, logistic activation.
/// The output layer keeps its bias frozen at zero.
struct Layer {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  bool bias_trainable = true;
};

struct MlpModel {
  std::vector<Layer> layers;
  int input_dim = 0;
  std::uint64_t seed = 0;

  int output_dim() const {
    return layers.empty() ? 0 : static_cast<int>(layers.back().weights.rows());
  }
};

void validate_model(const MlpModel& model);

struct TrainConfig {
  int epochs = 600;
  double learning_rate = 0.05;
  int batch_size = 100;
  LossKind loss = LossKind::kCrossEntropy;
  std::uint64_t seed = 0;
  bool shuffle = true;
};

/// Gradient structure congruent to the model parameters.
struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/// Glorot-uniform weights from a seeded generator; hidden biases zero and
/// trainable, output bias zero and frozen. layer_dims lists unit counts from
/// input to output, e.g. (1300, 1300, 1300).
MlpModel init_model(const std::vector<int>& layer_dims, std::uint64_t seed);

double sigmoid(double z);

/// Per layer a <- sigmoid(W a + b).
Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& input);

/// Batched forward; each column is one example.
Eigen::MatrixXd forward_batch(const MlpModel& model,
                              const Eigen::MatrixXd& inputs);

/// Mean-over-batch loss and reverse-mode gradients. Cross-entropy clamps
/// predictions to [1e-12, 1 - 1e-12]; frozen biases get zero gradient.
std::pair<double, Gradients> loss_and_gradient(const MlpModel& model,
                                               const Eigen::MatrixXd& inputs,
                                               const Eigen::MatrixXd& targets,
                                               LossKind loss);

/// Plain SGD: per epoch a seeded shuffle, batches of cfg.batch_size (last
/// partial batch kept), update theta <- theta - lr * grad. No momentum, no
/// weight decay, no dropout. Returns the trained model and one mean loss
/// value per epoch. Fully deterministic given the seed.
std::pair<MlpModel, std::vector<double>> train_sgd(
    MlpModel model, const std::vector<WindowPair>& data,
    const TrainConfig& cfg);

/// Binary model format: magic "PBM1", version u32, layer count u32, then per
/// layer rows u32, cols u32, bias_trainable u8, row-major weights as
/// little-endian f64, then the bias vector. Integers little-endian.
std::vector<unsigned char> save_model(const MlpModel& model);
MlpModel load_model(const std::vector<unsigned char>& bytes);

void save_model_file(const MlpModel& model, const std::string& path);
MlpModel load_model_file(const std::string& path);

}  // namespace pbsep

#endif  // PBSEP_MLP_HPP_
