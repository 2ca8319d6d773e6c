#include "groot/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "groot/rng.hpp"

namespace groot {

using json = nlohmann::json;

void Tensors::set_zero() {
  for_each([](const char*, MatrixXd& m) { m.setZero(); });
}

bool Tensors::all_finite() const {
  bool ok = true;
  for_each([&](const char*, const MatrixXd& m) { ok = ok && m.allFinite(); });
  return ok;
}

Tensors make_tensors(int vocab_size, const ModelConfig& cfg) {
  const int de = cfg.embed_dim;
  const int dh = cfg.hidden_dim;
  const int V = vocab_size;
  Tensors t;
  t.embed = MatrixXd::Zero(V, de);
  t.enc_wz = MatrixXd::Zero(dh, de); t.enc_wr = MatrixXd::Zero(dh, de); t.enc_wh = MatrixXd::Zero(dh, de);
  t.enc_uz = MatrixXd::Zero(dh, dh); t.enc_ur = MatrixXd::Zero(dh, dh); t.enc_uh = MatrixXd::Zero(dh, dh);
  t.enc_bz = MatrixXd::Zero(dh, 1); t.enc_br = MatrixXd::Zero(dh, 1); t.enc_bh = MatrixXd::Zero(dh, 1);
  t.bridge_w = MatrixXd::Zero(dh, dh); t.bridge_b = MatrixXd::Zero(dh, 1);
  t.attn_wq = MatrixXd::Zero(dh, dh); t.attn_wm = MatrixXd::Zero(dh, dh);
  t.attn_b = MatrixXd::Zero(dh, 1); t.attn_v = MatrixXd::Zero(dh, 1);
  t.dec_wz = MatrixXd::Zero(dh, de + dh); t.dec_wr = MatrixXd::Zero(dh, de + dh); t.dec_wh = MatrixXd::Zero(dh, de + dh);
  t.dec_uz = MatrixXd::Zero(dh, dh); t.dec_ur = MatrixXd::Zero(dh, dh); t.dec_uh = MatrixXd::Zero(dh, dh);
  t.dec_bz = MatrixXd::Zero(dh, 1); t.dec_br = MatrixXd::Zero(dh, 1); t.dec_bh = MatrixXd::Zero(dh, 1);
  t.out_w = MatrixXd::Zero(V, 2 * dh); t.out_b = MatrixXd::Zero(V, 1);
  return t;
}

Model init_model(Vocab vocab, const ModelConfig& cfg) {
  Model m{std::move(vocab), cfg, make_tensors(0, cfg)};
  m.w = make_tensors(m.vocab.size(), cfg);
  Rng rng(cfg.seed);
  m.w.for_each([&](const char*, MatrixXd& t) {
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) = rng.uniform(-0.1, 0.1);
  });
  return m;
}

Model init_model_zero(Vocab vocab, const ModelConfig& cfg) {
  Model m{std::move(vocab), cfg, make_tensors(0, cfg)};
  m.w = make_tensors(m.vocab.size(), cfg);
  return m;
}

namespace {

inline VectorXd sigmoid(const VectorXd& x) {
  return x.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

inline VectorXd tanhv(const VectorXd& x) { return x.array().tanh().matrix(); }

// log softmax of logits, numerically stable
inline VectorXd log_softmax(const VectorXd& logits) {
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  return (logits.array() - lse).matrix();
}

struct GruCache {
  VectorXd z, r, hc, h_out;
};

// state update for either GRU given its six weight matrices
GruCache gru_forward(const MatrixXd& wz, const MatrixXd& wr, const MatrixXd& wh,
                     const MatrixXd& uz, const MatrixXd& ur, const MatrixXd& uh,
                     const MatrixXd& bz, const MatrixXd& br, const MatrixXd& bh,
                     const VectorXd& input, const VectorXd& state) {
  GruCache c;
  c.z = sigmoid(wz * input + uz * state + bz.col(0));
  c.r = sigmoid(wr * input + ur * state + br.col(0));
  c.hc = tanhv(wh * input + uh * (c.r.cwiseProduct(state)) + bh.col(0));
  c.h_out = (VectorXd::Ones(state.size()) - c.z).cwiseProduct(state) + c.z.cwiseProduct(c.hc);
  return c;
}

struct GruGrads {
  MatrixXd* wz; MatrixXd* wr; MatrixXd* wh;
  MatrixXd* uz; MatrixXd* ur; MatrixXd* uh;
  MatrixXd* bz; MatrixXd* br; MatrixXd* bh;
};

// Backward through one GRU step. d_out is the gradient on h_out; returns the
// gradient on the input and accumulates the gradient on the previous state.
VectorXd gru_backward(const MatrixXd& wz, const MatrixXd& wr, const MatrixXd& wh,
                      const MatrixXd& uz, const MatrixXd& ur, const MatrixXd& uh,
                      const GruCache& c, const VectorXd& input, const VectorXd& state,
                      const VectorXd& d_out, VectorXd& d_state, GruGrads g) {
  VectorXd d_prev = d_out.cwiseProduct(VectorXd::Ones(state.size()) - c.z);
  VectorXd dz = d_out.cwiseProduct(c.hc - state);
  VectorXd dhc = d_out.cwiseProduct(c.z);

  VectorXd dhc_pre = dhc.cwiseProduct((1.0 - c.hc.array().square()).matrix());
  g.wh->noalias() += dhc_pre * input.transpose();
  g.uh->noalias() += dhc_pre * (c.r.cwiseProduct(state)).transpose();
  g.bh->col(0) += dhc_pre;
  VectorXd drs = uh.transpose() * dhc_pre;
  VectorXd dr = drs.cwiseProduct(state);
  d_prev += drs.cwiseProduct(c.r);

  VectorXd dz_pre = dz.cwiseProduct(c.z).cwiseProduct(VectorXd::Ones(state.size()) - c.z);
  g.wz->noalias() += dz_pre * input.transpose();
  g.uz->noalias() += dz_pre * state.transpose();
  g.bz->col(0) += dz_pre;
  d_prev.noalias() += uz.transpose() * dz_pre;

  VectorXd dr_pre = dr.cwiseProduct(c.r).cwiseProduct(VectorXd::Ones(state.size()) - c.r);
  g.wr->noalias() += dr_pre * input.transpose();
  g.ur->noalias() += dr_pre * state.transpose();
  g.br->col(0) += dr_pre;
  d_prev.noalias() += ur.transpose() * dr_pre;

  d_state += d_prev;
  return wz.transpose() * dz_pre + wr.transpose() * dr_pre + wh.transpose() * dhc_pre;
}

struct AttnOut {
  MatrixXd t;      // dh x n tanh activations
  VectorXd alpha;  // n
  VectorXd ctx;    // dh
};

AttnOut attention_forward(const Model& m, const EncodedInput& enc, const VectorXd& query) {
  AttnOut a;
  a.t = (enc.memory.colwise() + (m.w.attn_wq * query)).array().tanh().matrix();
  VectorXd scores = a.t.transpose() * m.w.attn_v.col(0);
  const double mx = scores.maxCoeff();
  VectorXd ex = (scores.array() - mx).exp().matrix();
  a.alpha = ex / ex.sum();
  a.ctx = enc.h * a.alpha;
  return a;
}

}  // namespace

EncodedInput encode_input(const Model& model, const std::vector<int>& x) {
  if (x.empty()) throw Error("cannot encode an empty input");
  const int dh = model.cfg.hidden_dim;
  const int n = static_cast<int>(x.size());
  EncodedInput enc;
  enc.x = x;
  enc.h = MatrixXd(dh, n);
  VectorXd state = VectorXd::Zero(dh);
  for (int i = 0; i < n; ++i) {
    if (x[static_cast<std::size_t>(i)] < 0 || x[static_cast<std::size_t>(i)] >= model.vocab.size())
      throw UnknownToken("input token id out of range");
    VectorXd e = model.w.embed.row(x[static_cast<std::size_t>(i)]).transpose();
    GruCache c = gru_forward(model.w.enc_wz, model.w.enc_wr, model.w.enc_wh, model.w.enc_uz,
                             model.w.enc_ur, model.w.enc_uh, model.w.enc_bz, model.w.enc_br,
                             model.w.enc_bh, e, state);
    state = c.h_out;
    enc.h.col(i) = state;
  }
  enc.memory = (model.w.attn_wm * enc.h).colwise() + model.w.attn_b.col(0);
  enc.s0 = tanhv(model.w.bridge_w * enc.h.col(n - 1) + model.w.bridge_b.col(0));
  return enc;
}

namespace {

struct StepOut {
  VectorXd s_new;
  VectorXd logp;  // over the vocab
  AttnOut attn;
  GruCache gru;
  VectorXd u;
};

StepOut decoder_step(const Model& m, const EncodedInput& enc, const VectorXd& s, int prev_id) {
  if (prev_id < 0 || prev_id >= m.vocab.size())
    throw UnknownToken("decoder token id out of range");
  StepOut o;
  o.attn = attention_forward(m, enc, s);
  const int de = m.cfg.embed_dim;
  const int dh = m.cfg.hidden_dim;
  o.u = VectorXd(de + dh);
  o.u.head(de) = m.w.embed.row(prev_id).transpose();
  o.u.tail(dh) = o.attn.ctx;
  o.gru = gru_forward(m.w.dec_wz, m.w.dec_wr, m.w.dec_wh, m.w.dec_uz, m.w.dec_ur, m.w.dec_uh,
                      m.w.dec_bz, m.w.dec_br, m.w.dec_bh, o.u, s);
  o.s_new = o.gru.h_out;
  VectorXd out_in(2 * dh);
  out_in.head(dh) = o.s_new;
  out_in.tail(dh) = o.attn.ctx;
  o.logp = log_softmax(m.w.out_w * out_in + m.w.out_b.col(0));
  return o;
}

void check_target(const std::vector<int>& y, const Model& m) {
  if (y.empty()) throw Error("cannot score an empty target");
  if (y.back() != Vocab::kEos) throw Error("target must end with EOS");
  for (int t : y)
    if (t < 0 || t >= m.vocab.size()) throw UnknownToken("target token id out of range");
}

}  // namespace

double score(const Model& model, const EncodedInput& enc, const std::vector<int>& y) {
  check_target(y, model);
  VectorXd s = enc.s0;
  double total = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const int prev = t == 0 ? Vocab::kBos : y[t - 1];
    StepOut o = decoder_step(model, enc, s, prev);
    total += o.logp(y[t]);
    s = o.s_new;
  }
  return total;
}

double score(const Model& model, const std::vector<int>& x, const std::vector<int>& y) {
  return score(model, encode_input(model, x), y);
}

// ---- scoring with cached activations ----

struct ScoreHandle::Impl {
  const Model* model = nullptr;
  std::vector<int> x, y;
  EncodedInput enc;
  std::vector<GruCache> enc_steps;
  std::vector<StepOut> dec_steps;
  std::vector<VectorXd> softmax;  // per step, probs over vocab
  double logprob = 0.0;
};

double ScoreHandle::logprob() const { return impl_->logprob; }

ScoreHandle score_with_grad(const Model& model, const std::vector<int>& x,
                            const std::vector<int>& y) {
  check_target(y, model);
  auto impl = std::make_shared<ScoreHandle::Impl>();
  impl->model = &model;
  impl->x = x;
  impl->y = y;

  // encoder forward with per-step caches
  if (x.empty()) throw Error("cannot encode an empty input");
  const int dh = model.cfg.hidden_dim;
  const int n = static_cast<int>(x.size());
  impl->enc.x = x;
  impl->enc.h = MatrixXd(dh, n);
  VectorXd state = VectorXd::Zero(dh);
  for (int i = 0; i < n; ++i) {
    VectorXd e = model.w.embed.row(x[static_cast<std::size_t>(i)]).transpose();
    GruCache c = gru_forward(model.w.enc_wz, model.w.enc_wr, model.w.enc_wh, model.w.enc_uz,
                             model.w.enc_ur, model.w.enc_uh, model.w.enc_bz, model.w.enc_br,
                             model.w.enc_bh, e, state);
    state = c.h_out;
    impl->enc.h.col(i) = state;
    impl->enc_steps.push_back(std::move(c));
  }
  impl->enc.memory = (model.w.attn_wm * impl->enc.h).colwise() + model.w.attn_b.col(0);
  impl->enc.s0 = tanhv(model.w.bridge_w * impl->enc.h.col(n - 1) + model.w.bridge_b.col(0));

  VectorXd s = impl->enc.s0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const int prev = t == 0 ? Vocab::kBos : y[t - 1];
    StepOut o = decoder_step(model, impl->enc, s, prev);
    impl->logprob += o.logp(y[t]);
    impl->softmax.push_back(o.logp.array().exp().matrix());
    s = o.s_new;
    impl->dec_steps.push_back(std::move(o));
  }
  return ScoreHandle(std::move(impl));
}

void ScoreHandle::backward(double weight, Tensors& grads) const {
  const Impl& c = *impl_;
  const Model& m = *c.model;
  const int de = m.cfg.embed_dim;
  const int dh = m.cfg.hidden_dim;
  const int n = static_cast<int>(c.x.size());
  const int L = static_cast<int>(c.y.size());

  MatrixXd dH = MatrixXd::Zero(dh, n);
  VectorXd ds_out = VectorXd::Zero(dh);

  GruGrads dec_g{&grads.dec_wz, &grads.dec_wr, &grads.dec_wh, &grads.dec_uz, &grads.dec_ur,
                 &grads.dec_uh, &grads.dec_bz, &grads.dec_br, &grads.dec_bh};

  for (int t = L - 1; t >= 0; --t) {
    const StepOut& step = c.dec_steps[static_cast<std::size_t>(t)];
    const VectorXd& s_in = t == 0 ? c.enc.s0 : c.dec_steps[static_cast<std::size_t>(t - 1)].s_new;
    const int prev = t == 0 ? Vocab::kBos : c.y[static_cast<std::size_t>(t - 1)];

    VectorXd dlogits = -weight * c.softmax[static_cast<std::size_t>(t)];
    dlogits(c.y[static_cast<std::size_t>(t)]) += weight;

    VectorXd out_in(2 * dh);
    out_in.head(dh) = step.s_new;
    out_in.tail(dh) = step.attn.ctx;
    grads.out_w.noalias() += dlogits * out_in.transpose();
    grads.out_b.col(0) += dlogits;
    VectorXd d_out_in = m.w.out_w.transpose() * dlogits;

    ds_out += d_out_in.head(dh);
    VectorXd dctx = d_out_in.tail(dh);

    VectorXd ds_in = VectorXd::Zero(dh);
    VectorXd du = gru_backward(m.w.dec_wz, m.w.dec_wr, m.w.dec_wh, m.w.dec_uz, m.w.dec_ur,
                               m.w.dec_uh, step.gru, step.u, s_in, ds_out, ds_in, dec_g);
    grads.embed.row(prev) += du.head(de).transpose();
    dctx += du.tail(dh);

    // attention backward; query was s_in
    VectorXd dalpha = c.enc.h.transpose() * dctx;
    dH.noalias() += dctx * step.attn.alpha.transpose();
    const double dot = step.attn.alpha.dot(dalpha);
    VectorXd da = step.attn.alpha.cwiseProduct(dalpha - VectorXd::Constant(n, dot));
    MatrixXd dT = m.w.attn_v.col(0) * da.transpose();
    MatrixXd dpre = dT.cwiseProduct((1.0 - step.attn.t.array().square()).matrix());
    grads.attn_v.col(0).noalias() += step.attn.t * da;
    VectorXd rowsum = dpre.rowwise().sum();
    grads.attn_wq.noalias() += rowsum * s_in.transpose();
    grads.attn_wm.noalias() += dpre * c.enc.h.transpose();
    grads.attn_b.col(0) += rowsum;
    dH.noalias() += m.w.attn_wm.transpose() * dpre;

    ds_out = ds_in + m.w.attn_wq.transpose() * rowsum;
  }

  // bridge
  VectorXd ds0_pre = ds_out.cwiseProduct((1.0 - c.enc.s0.array().square()).matrix());
  grads.bridge_w.noalias() += ds0_pre * c.enc.h.col(n - 1).transpose();
  grads.bridge_b.col(0) += ds0_pre;
  dH.col(n - 1).noalias() += m.w.bridge_w.transpose() * ds0_pre;

  // encoder
  GruGrads enc_g{&grads.enc_wz, &grads.enc_wr, &grads.enc_wh, &grads.enc_uz, &grads.enc_ur,
                 &grads.enc_uh, &grads.enc_bz, &grads.enc_br, &grads.enc_bh};
  VectorXd dh_carry = VectorXd::Zero(dh);
  for (int i = n - 1; i >= 0; --i) {
    VectorXd d_out = dh_carry + dH.col(i);
    VectorXd h_prev = i == 0 ? VectorXd::Zero(dh).eval()
                             : VectorXd(c.enc.h.col(i - 1));
    VectorXd e = m.w.embed.row(c.x[static_cast<std::size_t>(i)]).transpose();
    dh_carry.setZero();
    VectorXd dx = gru_backward(m.w.enc_wz, m.w.enc_wr, m.w.enc_wh, m.w.enc_uz, m.w.enc_ur,
                               m.w.enc_uh, c.enc_steps[static_cast<std::size_t>(i)], e, h_prev,
                               d_out, dh_carry, enc_g);
    grads.embed.row(c.x[static_cast<std::size_t>(i)]) += dx.transpose();
  }
}

// ---- beam search ----

std::vector<BeamCandidate> beam_search(const Model& model, const EncodedInput& enc, int k,
                                       int step_budget) {
  if (k < 1) throw Error("beam width must be >= 1");
  const int n = static_cast<int>(enc.x.size());
  const int budget = step_budget > 0 ? step_budget : 2 * n + 4;
  const int V = model.vocab.size();

  struct Hyp {
    std::vector<int> tokens;
    double logprob = 0.0;
    VectorXd state;
  };
  struct Expansion {
    double logprob;
    int token;
    int parent;
  };

  std::vector<Hyp> live;
  live.push_back({{}, 0.0, enc.s0});
  std::vector<BeamCandidate> finished;

  auto expansion_less = [](const Expansion& a, const Expansion& b) {
    if (a.logprob != b.logprob) return a.logprob > b.logprob;
    if (a.token != b.token) return a.token < b.token;
    return a.parent < b.parent;
  };

  for (int step = 0; step < budget && !live.empty(); ++step) {
    std::vector<VectorXd> next_states(live.size());
    std::vector<Expansion> expansions;
    expansions.reserve(live.size() * static_cast<std::size_t>(V));
    for (std::size_t p = 0; p < live.size(); ++p) {
      const int prev = live[p].tokens.empty() ? Vocab::kBos : live[p].tokens.back();
      StepOut o = decoder_step(model, enc, live[p].state, prev);
      next_states[p] = std::move(o.s_new);
      for (int v = 0; v < V; ++v)
        expansions.push_back({live[p].logprob + o.logp(v), v, static_cast<int>(p)});
    }
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), expansions.size());
    std::partial_sort(expansions.begin(), expansions.begin() + static_cast<long>(keep),
                      expansions.end(), expansion_less);
    std::vector<Hyp> next_live;
    for (std::size_t i = 0; i < keep; ++i) {
      const Expansion& ex = expansions[i];
      std::vector<int> tokens = live[static_cast<std::size_t>(ex.parent)].tokens;
      tokens.push_back(ex.token);
      if (ex.token == Vocab::kEos) {
        finished.push_back({std::move(tokens), ex.logprob, 0});
      } else {
        next_live.push_back({std::move(tokens), ex.logprob, next_states[static_cast<std::size_t>(ex.parent)]});
      }
    }
    live = std::move(next_live);
  }

  // finalize leftovers by forcing EOS so their logprob stays exact
  for (const Hyp& h : live) {
    const int prev = h.tokens.empty() ? Vocab::kBos : h.tokens.back();
    StepOut o = decoder_step(model, enc, h.state, prev);
    std::vector<int> tokens = h.tokens;
    tokens.push_back(Vocab::kEos);
    finished.push_back({std::move(tokens), h.logprob + o.logp(Vocab::kEos), 0});
  }

  std::sort(finished.begin(), finished.end(), [](const BeamCandidate& a, const BeamCandidate& b) {
    if (a.logprob != b.logprob) return a.logprob > b.logprob;
    return a.sequence < b.sequence;
  });
  if (finished.size() > static_cast<std::size_t>(k)) finished.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < finished.size(); ++i) finished[i].rank = static_cast<int>(i) + 1;
  return finished;
}

std::vector<BeamCandidate> beam_search(const Model& model, const std::vector<int>& x, int k,
                                       int step_budget) {
  return beam_search(model, encode_input(model, x), k, step_budget);
}

// ---- optimizer ----

OptKind opt_kind_from_string(const std::string& name) {
  if (name == "sgd") return OptKind::Sgd;
  if (name == "adam") return OptKind::Adam;
  throw ConfigError("unknown optimizer '" + name + "'");
}

void sgd_step(MatrixXd& param, const MatrixXd& grad, double lr) { param -= lr * grad; }

Optimizer::Optimizer(OptKind kind, int vocab_size, const ModelConfig& cfg)
    : kind_(kind), m_(make_tensors(vocab_size, cfg)), v_(make_tensors(vocab_size, cfg)) {}

void Optimizer::apply(Tensors& params, const Tensors& grads, double lr) {
  if (!grads.all_finite()) throw NonFiniteGradient("non-finite gradient");
  if (kind_ == OptKind::Sgd) {
    params.for_each([&](const char* name, MatrixXd& p) {
      const MatrixXd* g = nullptr;
      const_cast<Tensors&>(grads).for_each([&](const char* gname, MatrixXd& gm) {
        if (std::string(gname) == name) g = &gm;
      });
      sgd_step(p, *g, lr);
    });
    return;
  }
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  ++step_;
  const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(step_));
  // iterate the three tensor sets in lockstep
  std::vector<MatrixXd*> ps, ms, vs;
  std::vector<const MatrixXd*> gs;
  params.for_each([&](const char*, MatrixXd& t) { ps.push_back(&t); });
  m_.for_each([&](const char*, MatrixXd& t) { ms.push_back(&t); });
  v_.for_each([&](const char*, MatrixXd& t) { vs.push_back(&t); });
  grads.for_each([&](const char*, const MatrixXd& t) { gs.push_back(&t); });
  for (std::size_t i = 0; i < ps.size(); ++i) {
    MatrixXd& m = *ms[i];
    MatrixXd& v = *vs[i];
    const MatrixXd& g = *gs[i];
    m = kBeta1 * m + (1.0 - kBeta1) * g;
    v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
    ps[i]->array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + kEps);
  }
}

// ---- checkpointing ----

namespace {
constexpr int kCheckpointVersion = 1;
}

void save_checkpoint(const std::string& path, const Model& model) {
  json j;
  j["format_version"] = kCheckpointVersion;
  j["config"] = {{"embed_dim", model.cfg.embed_dim},
                 {"hidden_dim", model.cfg.hidden_dim},
                 {"seed", model.cfg.seed}};
  std::vector<std::string> words(model.vocab.symbols().begin() + 3,
                                 model.vocab.symbols().begin() + 3 +
                                     (model.vocab.sentinel_id(0) - 3));
  j["vocab"] = {{"words", words},
                {"max_sentinels", model.vocab.sentinel_count()},
                {"labels", model.vocab.labels()}};
  json weights;
  model.w.for_each([&](const char* name, const MatrixXd& t) {
    if (!t.allFinite()) throw IoError(std::string("non-finite weights in ") + name);
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(t.size()));
    for (Eigen::Index r = 0; r < t.rows(); ++r)
      for (Eigen::Index c = 0; c < t.cols(); ++c) flat.push_back(t(r, c));
    weights[name] = {{"rows", t.rows()}, {"cols", t.cols()}, {"data", flat}};
  });
  j["weights"] = std::move(weights);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write checkpoint to " + path);
  out << j.dump() << "\n";
}

Model load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInitialCheckpoint("cannot open checkpoint " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("bad checkpoint " + path + ": " + e.what());
  }
  if (j.value("format_version", -1) != kCheckpointVersion)
    throw IoError("unsupported checkpoint version in " + path);
  ModelConfig cfg;
  cfg.embed_dim = j["config"]["embed_dim"].get<int>();
  cfg.hidden_dim = j["config"]["hidden_dim"].get<int>();
  cfg.seed = j["config"]["seed"].get<std::uint64_t>();
  Vocab vocab = Vocab::build(j["vocab"]["words"].get<std::vector<std::string>>(),
                             j["vocab"]["max_sentinels"].get<int>(),
                             j["vocab"]["labels"].get<std::vector<std::string>>());
  Model model = init_model_zero(std::move(vocab), cfg);
  model.w.for_each([&](const char* name, MatrixXd& t) {
    const json& w = j["weights"].at(name);
    if (w["rows"].get<Eigen::Index>() != t.rows() || w["cols"].get<Eigen::Index>() != t.cols())
      throw IoError(std::string("shape mismatch for ") + name + " in " + path);
    const auto flat = w["data"].get<std::vector<double>>();
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < t.rows(); ++r)
      for (Eigen::Index c = 0; c < t.cols(); ++c) t(r, c) = flat[idx++];
  });
  return model;
}

}  // namespace groot
