#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "groot/errors.hpp"
#include "groot/vocab.hpp"

namespace groot {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ModelConfig {
  int embed_dim = 64;
  int hidden_dim = 64;
  std::uint64_t seed = 1;
};

// All weight tensors of the encoder-decoder (biases as column matrices so
// generic iteration sees one shape family). Layout:
//   encoder: single-layer GRU over input embeddings
//   bridge:  tanh projection of the last encoder state into the decoder
//   attention: additive (query from decoder state, memory from encoder states)
//   decoder: single-layer GRU over [prev-token embedding; context]
//   output:  logits over the vocab from [decoder state; context]
struct Tensors {
  MatrixXd embed;                                   // V x de
  MatrixXd enc_wz, enc_wr, enc_wh;                  // dh x de
  MatrixXd enc_uz, enc_ur, enc_uh;                  // dh x dh
  MatrixXd enc_bz, enc_br, enc_bh;                  // dh x 1
  MatrixXd bridge_w, bridge_b;                      // dh x dh, dh x 1
  MatrixXd attn_wq, attn_wm;                        // dh x dh
  MatrixXd attn_b, attn_v;                          // dh x 1
  MatrixXd dec_wz, dec_wr, dec_wh;                  // dh x (de+dh)
  MatrixXd dec_uz, dec_ur, dec_uh;                  // dh x dh
  MatrixXd dec_bz, dec_br, dec_bh;                  // dh x 1
  MatrixXd out_w, out_b;                            // V x 2dh, V x 1

  template <typename F>
  void for_each(F&& f) {
    f("embed", embed);
    f("enc_wz", enc_wz); f("enc_wr", enc_wr); f("enc_wh", enc_wh);
    f("enc_uz", enc_uz); f("enc_ur", enc_ur); f("enc_uh", enc_uh);
    f("enc_bz", enc_bz); f("enc_br", enc_br); f("enc_bh", enc_bh);
    f("bridge_w", bridge_w); f("bridge_b", bridge_b);
    f("attn_wq", attn_wq); f("attn_wm", attn_wm);
    f("attn_b", attn_b); f("attn_v", attn_v);
    f("dec_wz", dec_wz); f("dec_wr", dec_wr); f("dec_wh", dec_wh);
    f("dec_uz", dec_uz); f("dec_ur", dec_ur); f("dec_uh", dec_uh);
    f("dec_bz", dec_bz); f("dec_br", dec_br); f("dec_bh", dec_bh);
    f("out_w", out_w); f("out_b", out_b);
  }

  template <typename F>
  void for_each(F&& f) const {
    const_cast<Tensors*>(this)->for_each(
        [&](const char* name, MatrixXd& m) { f(name, static_cast<const MatrixXd&>(m)); });
  }

  void set_zero();
  bool all_finite() const;
};

Tensors make_tensors(int vocab_size, const ModelConfig& cfg);

struct Model {
  Vocab vocab;
  ModelConfig cfg;
  Tensors w;
};

// Seeded uniform init in [-0.1, 0.1]; zero_weights gives the analytic
// uniform-softmax starting point used by tests.
Model init_model(Vocab vocab, const ModelConfig& cfg);
Model init_model_zero(Vocab vocab, const ModelConfig& cfg);

// Encoder pass reused across scoring and decoding for one input.
struct EncodedInput {
  std::vector<int> x;
  MatrixXd h;        // dh x n encoder states
  MatrixXd memory;   // dh x n attention memory projection (attn_wm*h + attn_b)
  VectorXd s0;       // initial decoder state
};

EncodedInput encode_input(const Model& model, const std::vector<int>& x);

// Exact teacher-forced log p(y|x); y must end with EOS.
double score(const Model& model, const std::vector<int>& x, const std::vector<int>& y);
double score(const Model& model, const EncodedInput& enc, const std::vector<int>& y);

// Scoring with cached activations so any scalar built from one or more
// scores can push its per-score coefficient back through the model.
class ScoreHandle {
 public:
  double logprob() const;
  // Accumulates weight * d(logprob)/d(params) into grads.
  void backward(double weight, Tensors& grads) const;

  struct Impl;
  explicit ScoreHandle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

ScoreHandle score_with_grad(const Model& model, const std::vector<int>& x,
                            const std::vector<int>& y);

struct BeamCandidate {
  std::vector<int> sequence;  // decoder tokens including the final EOS
  double logprob = 0.0;
  int rank = 0;               // 1-based, non-increasing logprob
};

// Deterministic beam search with raw summed log-probabilities; ties break
// toward the lower token id. Hypotheses still alive at the step budget
// (default 2*|x|+4) are finalized by forcing EOS, so every candidate's
// logprob equals score(model, x, candidate).
std::vector<BeamCandidate> beam_search(const Model& model, const std::vector<int>& x, int k,
                                       int step_budget = -1);
std::vector<BeamCandidate> beam_search(const Model& model, const EncodedInput& enc, int k,
                                       int step_budget = -1);

// ---- first-order updates ----

enum class OptKind { Sgd, Adam };

OptKind opt_kind_from_string(const std::string& name);

void sgd_step(MatrixXd& param, const MatrixXd& grad, double lr);

// Fixed-rate adaptive-moment update (0.9/0.999 moments, eps 1e-8).
class Optimizer {
 public:
  Optimizer(OptKind kind, int vocab_size, const ModelConfig& cfg);

  // Throws NonFiniteGradient before touching params.
  void apply(Tensors& params, const Tensors& grads, double lr);

  OptKind kind() const { return kind_; }

 private:
  OptKind kind_;
  long step_ = 0;
  Tensors m_, v_;
};

// ---- checkpointing: versioned JSON blob, bit-exact reload ----

void save_checkpoint(const std::string& path, const Model& model);
Model load_checkpoint(const std::string& path);

}  // namespace groot
