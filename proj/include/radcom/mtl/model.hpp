#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "radcom/nn/network.hpp"

namespace radcom::mtl {

enum class ModelVariant { base, c2_sh, c2_sh_tasks };

const char* to_string(ModelVariant v);
ModelVariant variant_from_string(const std::string& s);

// (C_sh, C_m, F_m, C_s, F_s) density plus the extra-layer variants.
struct ModelConfig {
    int c_sh = 8, c_m = 4, f_m = 256, c_s = 4, f_s = 256;
    ModelVariant variant = ModelVariant::base;
    int n_mod_classes = 9;
    int n_sig_classes = 11;
    double dropout_conv = 0.25;  // shared and branch conv blocks
    double dropout_fc = 0.5;     // branch fully-connected blocks
    int kernel = 3;

    bool operator==(const ModelConfig&) const = default;

    std::string describe() const;  // "(8,4,256,4,256)" or variant name
};

std::string model_config_to_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const std::string& json_text);

// Loss weights over the two tasks; must sum to 1.
struct TaskWeights {
    double w_mod = 0.2;
    double w_sig = 0.8;

    TaskWeights() = default;
    TaskWeights(double wm, double ws);
};

struct MtlLoss {
    double total;
    double mod;
    double sig;
};

// Hard-parameter-shared network: a shared conv trunk feeding modulation and
// signal branches, each ending in a softmax head. Input is the 16x16 view of
// a vectorized frame.
class MtlModel {
public:
    static MtlModel build(const ModelConfig& cfg, std::uint64_t seed);

    // x: [N,16,16,1] -> (mod probs [N,9], sig probs [N,11])
    std::pair<Tensor, Tensor> forward(const Tensor& x, nn::Mode mode);

    // Gradients w.r.t. each head's probabilities; accumulates into the
    // parameter grads and returns nothing (inputs are data).
    void backward(const Tensor& grad_mod_probs, const Tensor& grad_sig_probs);

    // Exact partition: every tensor belongs to shared., mod. or sig.
    std::vector<nn::NamedParam> named_params();
    std::vector<Tensor*> trainable_values();
    std::vector<const Tensor*> trainable_grads();

    void reseed_dropout(std::uint64_t seed);
    const ModelConfig& config() const { return cfg_; }
    std::int64_t parameter_count();  // trainable scalars, counted from tensors

    // Rounds every parameter and buffer to its float32 value so checkpoints
    // round-trip losslessly.
    void quantize_f32();

    void save_checkpoint(const std::string& path);
    static MtlModel load_checkpoint(const std::string& path);

private:
    MtlModel() = default;

    ModelConfig cfg_;
    nn::Network shared_, mod_branch_, sig_branch_;
};

// total = w_mod * mean-CE(mod) + w_sig * mean-CE(sig).
MtlLoss mtl_loss(const Tensor& mod_probs, const Tensor& sig_probs, const std::vector<int>& mod_labels,
                 const std::vector<int>& sig_labels, const TaskWeights& w);

// d(weight * mean-CE)/d(probs): -(weight/N)/p at each row's label, with p
// clamped below at 1e-12.
Tensor ce_prob_grad(const Tensor& probs, const std::vector<int>& labels, double weight);

}  // namespace radcom::mtl
