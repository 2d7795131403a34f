// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "pbsep/mlp.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

namespace pbsep {

namespace {

constexpr double kProbClamp = 1e-12;

// Uniform double in [0,1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution so that identical
// seeds give identical bits everywhere.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t next_index(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(next_unit(rng) * static_cast<double>(bound));
}

void fisher_yates(std::vector<long>& idx, std::mt19937_64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::swap(idx[i - 1], idx[next_index(rng, i)]);
  }
}

}  // namespace

LossKind loss_from_string(const std::string& name) {
  if (name == "cross_entropy") return LossKind::kCrossEntropy;
  if (name == "mean_squared_error") return LossKind::kMeanSquaredError;
  throw std::invalid_argument("unknown loss: " + name);
}

std::string to_string(LossKind loss) {
  return loss == LossKind::kCrossEntropy ? "cross_entropy"
                                         : "mean_squared_error";
}

void validate_model(const MlpModel& model) {
  if (model.layers.empty()) {
    throw std::invalid_argument("MlpModel: no layers");
  }
  long in = model.input_dim;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const Layer& layer = model.layers[l];
    if (layer.weights.cols() != in) {
      throw std::invalid_argument("MlpModel: layer dimension chain broken");
    }
    if (layer.bias.size() != layer.weights.rows()) {
      throw std::invalid_argument("MlpModel: bias length mismatch");
    }
    if (!layer.weights.allFinite() || !layer.bias.allFinite()) {
      throw std::invalid_argument("MlpModel: non-finite parameter");
    }
    in = layer.weights.rows();
  }
  const Layer& out = model.layers.back();
  if (out.bias_trainable || out.bias.cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("MlpModel: output bias must be zero and frozen");
  }
}

MlpModel init_model(const std::vector<int>& layer_dims, std::uint64_t seed) {
  if (layer_dims.size() < 2) {
    throw std::invalid_argument("init_model: need at least two dims");
  }
  for (int d : layer_dims) {
    if (d < 1) throw std::invalid_argument("init_model: dims must be positive");
  }

  std::mt19937_64 rng(seed);
  MlpModel model;
  model.input_dim = layer_dims.front();
  model.seed = seed;
  for (std::size_t l = 1; l < layer_dims.size(); ++l) {
    const int fan_in = layer_dims[l - 1];
    const int fan_out = layer_dims[l];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    Layer layer;
    layer.weights.resize(fan_out, fan_in);
    for (long r = 0; r < layer.weights.rows(); ++r) {
      for (long c = 0; c < layer.weights.cols(); ++c) {
        layer.weights(r, c) = bound * (2.0 * next_unit(rng) - 1.0);
      }
    }
    layer.bias = Eigen::VectorXd::Zero(fan_out);
    layer.bias_trainable = (l + 1 < layer_dims.size());
    model.layers.push_back(std::move(layer));
  }
  return model;
}

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

void sigmoid_inplace(Eigen::MatrixXd& m) {
  for (long c = 0; c < m.cols(); ++c) {
    for (long r = 0; r < m.rows(); ++r) {
      m(r, c) = sigmoid(m(r, c));
    }
  }
}

}  // namespace

Eigen::MatrixXd forward_batch(const MlpModel& model,
                              const Eigen::MatrixXd& inputs) {
  validate_model(model);
  if (inputs.rows() != model.input_dim) {
    throw std::invalid_argument("forward: input dimension mismatch");
  }
  if (!inputs.allFinite()) {
    throw std::invalid_argument("forward: non-finite input");
  }
  Eigen::MatrixXd a = inputs;
  for (const Layer& layer : model.layers) {
    Eigen::MatrixXd z = layer.weights * a;
    z.colwise() += layer.bias;
    sigmoid_inplace(z);
    a = std::move(z);
  }
  return a;
}

Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& input) {
  return forward_batch(model, input);
}

std::pair<double, Gradients> loss_and_gradient(const MlpModel& model,
                                               const Eigen::MatrixXd& inputs,
                                               const Eigen::MatrixXd& targets,
                                               LossKind loss) {
  validate_model(model);
  if (inputs.rows() != model.input_dim ||
      targets.rows() != model.output_dim() ||
      inputs.cols() != targets.cols() || inputs.cols() == 0) {
    throw std::invalid_argument("loss_and_gradient: batch shape mismatch");
  }
  const double batch = static_cast<double>(inputs.cols());

  // Forward pass keeping every activation for the backward sweep.
  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(model.layers.size() + 1);
  acts.push_back(inputs);
  for (const Layer& layer : model.layers) {
    Eigen::MatrixXd z = layer.weights * acts.back();
    z.colwise() += layer.bias;
    sigmoid_inplace(z);
    acts.push_back(std::move(z));
  }
  const Eigen::MatrixXd& y = acts.back();

  double total = 0.0;
  Eigen::MatrixXd dloss_dy(y.rows(), y.cols());
  if (loss == LossKind::kCrossEntropy) {
    for (long c = 0; c < y.cols(); ++c) {
      for (long r = 0; r < y.rows(); ++r) {
        const double t = targets(r, c);
        const double raw = y(r, c);
        const double yc =
            std::min(std::max(raw, kProbClamp), 1.0 - kProbClamp);
        total += -(t * std::log(yc) + (1.0 - t) * std::log(1.0 - yc));
        // Clamped entries are locally constant in y, so their gradient is 0.
        const bool interior = raw > kProbClamp && raw < 1.0 - kProbClamp;
        dloss_dy(r, c) =
            interior ? (-t / yc + (1.0 - t) / (1.0 - yc)) / batch : 0.0;
      }
    }
  } else {
    for (long c = 0; c < y.cols(); ++c) {
      for (long r = 0; r < y.rows(); ++r) {
        const double d = y(r, c) - targets(r, c);
        total += d * d;
        dloss_dy(r, c) = 2.0 * d / batch;
      }
    }
  }

  Gradients grads;
  grads.weights.resize(model.layers.size());
  grads.biases.resize(model.layers.size());
  Eigen::MatrixXd delta =
      dloss_dy.cwiseProduct(y.cwiseProduct(Eigen::MatrixXd::Ones(y.rows(), y.cols()) - y));
  for (long l = static_cast<long>(model.layers.size()) - 1; l >= 0; --l) {
    const Layer& layer = model.layers[l];
    grads.weights[l].noalias() = delta * acts[l].transpose();
    grads.biases[l] = layer.bias_trainable
                          ? Eigen::VectorXd(delta.rowwise().sum())
                          : Eigen::VectorXd::Zero(layer.bias.size());
    if (l > 0) {
      Eigen::MatrixXd back = layer.weights.transpose() * delta;
      const Eigen::MatrixXd& a = acts[l];
      delta = back.cwiseProduct(
          a.cwiseProduct(Eigen::MatrixXd::Ones(a.rows(), a.cols()) - a));
    }
  }
  return {total / batch, std::move(grads)};
}

std::pair<MlpModel, std::vector<double>> train_sgd(
    MlpModel model, const std::vector<WindowPair>& data,
    const TrainConfig& cfg) {
  validate_model(model);
  if (data.empty()) throw std::invalid_argument("train_sgd: empty data");
  if (cfg.epochs < 1 || cfg.batch_size < 1 || cfg.learning_rate < 0.0) {
    throw std::invalid_argument("train_sgd: bad config");
  }
  const long n = static_cast<long>(data.size());
  for (const WindowPair& p : data) {
    if (p.input.size() != model.input_dim ||
        p.target.size() != model.output_dim()) {
      throw std::invalid_argument("train_sgd: example dimension mismatch");
    }
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<long> order(n);
  for (long i = 0; i < n; ++i) order[i] = i;

  std::vector<double> trace;
  trace.reserve(cfg.epochs);
  Eigen::MatrixXd batch_in;
  Eigen::MatrixXd batch_tg;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.shuffle) fisher_yates(order, rng);
    double epoch_total = 0.0;
    for (long start = 0; start < n; start += cfg.batch_size) {
      const long bsz = std::min<long>(cfg.batch_size, n - start);
      batch_in.resize(model.input_dim, bsz);
      batch_tg.resize(model.output_dim(), bsz);
      for (long j = 0; j < bsz; ++j) {
        batch_in.col(j) = data[order[start + j]].input;
        batch_tg.col(j) = data[order[start + j]].target;
      }
      auto [loss, grads] = loss_and_gradient(model, batch_in, batch_tg, cfg.loss);
      epoch_total += loss * static_cast<double>(bsz);
      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        model.layers[l].weights -= cfg.learning_rate * grads.weights[l];
        if (model.layers[l].bias_trainable) {
          model.layers[l].bias -= cfg.learning_rate * grads.biases[l];
        }
      }
    }
    trace.push_back(epoch_total / static_cast<double>(n));
  }
  return {std::move(model), std::move(trace)};
}

namespace {

constexpr char kMagic[4] = {'P', 'B', 'M', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
  }
}

void put_f64(std::vector<unsigned char>& buf, double d) {
  std::uint64_t u;
  std::memcpy(&u, &d, 8);
  for (int i = 0; i < 8; ++i) {
    buf.push_back(static_cast<unsigned char>((u >> (8 * i)) & 0xff));
  }
}

struct Reader {
  const std::vector<unsigned char>& buf;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > buf.size()) {
      throw std::runtime_error("load_model: truncated payload");
    }
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(buf[pos + i]) << (8 * i);
    }
    pos += 4;
    return v;
  }
  std::uint8_t u8() {
    need(1);
    return buf[pos++];
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(buf[pos + i]) << (8 * i);
    }
    pos += 8;
    double d;
    std::memcpy(&d, &v, 8);
    return d;
  }
};

}  // namespace

std::vector<unsigned char> save_model(const MlpModel& model) {
  validate_model(model);
  std::vector<unsigned char> buf;
  buf.insert(buf.end(), kMagic, kMagic + 4);
  put_u32(buf, kVersion);
  put_u32(buf, static_cast<std::uint32_t>(model.layers.size()));
  for (const Layer& layer : model.layers) {
    put_u32(buf, static_cast<std::uint32_t>(layer.weights.rows()));
    put_u32(buf, static_cast<std::uint32_t>(layer.weights.cols()));
    buf.push_back(layer.bias_trainable ? 1 : 0);
    for (long r = 0; r < layer.weights.rows(); ++r) {
      for (long c = 0; c < layer.weights.cols(); ++c) {
        put_f64(buf, layer.weights(r, c));
      }
    }
    for (long r = 0; r < layer.bias.size(); ++r) put_f64(buf, layer.bias(r));
  }
  return buf;
}

MlpModel load_model(const std::vector<unsigned char>& bytes) {
  Reader rd{bytes};
  rd.need(4);
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw std::runtime_error("load_model: bad magic");
  }
  rd.pos = 4;
  const std::uint32_t version = rd.u32();
  if (version != kVersion) {
    throw std::runtime_error("load_model: unsupported version " +
                             std::to_string(version));
  }
  const std::uint32_t layer_count = rd.u32();
  if (layer_count == 0) throw std::runtime_error("load_model: no layers");

  MlpModel model;
  for (std::uint32_t l = 0; l < layer_count; ++l) {
    const std::uint32_t rows = rd.u32();
    const std::uint32_t cols = rd.u32();
    if (rows == 0 || cols == 0) {
      throw std::runtime_error("load_model: zero layer dimension");
    }
    Layer layer;
    layer.bias_trainable = rd.u8() != 0;
    layer.weights.resize(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
      for (std::uint32_t c = 0; c < cols; ++c) layer.weights(r, c) = rd.f64();
    }
    layer.bias.resize(rows);
    for (std::uint32_t r = 0; r < rows; ++r) layer.bias(r) = rd.f64();
    if (l == 0) model.input_dim = static_cast<int>(cols);
    model.layers.push_back(std::move(layer));
  }
  if (rd.pos != bytes.size()) {
    throw std::runtime_error("load_model: trailing bytes");
  }
  validate_model(model);
  return model;
}

void save_model_file(const MlpModel& model, const std::string& path) {
  const std::vector<unsigned char> bytes = save_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_model_file: cannot open " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("save_model_file: write failed");
}

MlpModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_model_file: cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return load_model(bytes);
}

}  // namespace pbsep
