#include "radcom/mtl/model.hpp"

#include <cmath>
#include <map>
#include <nlohmann/json.hpp>

#include "radcom/nn/checkpoint.hpp"
#include "radcom/rng.hpp"

namespace radcom::mtl {

using nn::LayerSpec;
using nlohmann::json;

const char* to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::base: return "base";
        case ModelVariant::c2_sh: return "C2-sh";
        case ModelVariant::c2_sh_tasks: return "C2-sh-tasks";
    }
    return "?";
}

ModelVariant variant_from_string(const std::string& s) {
    if (s == "base") return ModelVariant::base;
    if (s == "C2-sh") return ModelVariant::c2_sh;
    if (s == "C2-sh-tasks") return ModelVariant::c2_sh_tasks;
    throw std::invalid_argument("unknown model variant: " + s);
}

std::string ModelConfig::describe() const {
    if (variant != ModelVariant::base) return to_string(variant);
    return "(" + std::to_string(c_sh) + "," + std::to_string(c_m) + "," + std::to_string(f_m) + "," +
           std::to_string(c_s) + "," + std::to_string(f_s) + ")";
}

std::string model_config_to_json(const ModelConfig& cfg) {
    json j;
    j["c_sh"] = cfg.c_sh;
    j["c_m"] = cfg.c_m;
    j["f_m"] = cfg.f_m;
    j["c_s"] = cfg.c_s;
    j["f_s"] = cfg.f_s;
    j["variant"] = to_string(cfg.variant);
    j["n_mod_classes"] = cfg.n_mod_classes;
    j["n_sig_classes"] = cfg.n_sig_classes;
    j["dropout_conv"] = cfg.dropout_conv;
    j["dropout_fc"] = cfg.dropout_fc;
    j["kernel"] = cfg.kernel;
    return j.dump();
}

ModelConfig model_config_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    ModelConfig d;
    ModelConfig cfg;
    cfg.c_sh = j.value("c_sh", d.c_sh);
    cfg.c_m = j.value("c_m", d.c_m);
    cfg.f_m = j.value("f_m", d.f_m);
    cfg.c_s = j.value("c_s", d.c_s);
    cfg.f_s = j.value("f_s", d.f_s);
    cfg.variant = variant_from_string(j.value("variant", "base"));
    cfg.n_mod_classes = j.value("n_mod_classes", d.n_mod_classes);
    cfg.n_sig_classes = j.value("n_sig_classes", d.n_sig_classes);
    cfg.dropout_conv = j.value("dropout_conv", d.dropout_conv);
    cfg.dropout_fc = j.value("dropout_fc", d.dropout_fc);
    cfg.kernel = j.value("kernel", d.kernel);
    return cfg;
}

TaskWeights::TaskWeights(double wm, double ws) : w_mod(wm), w_sig(ws) {
    if (wm < 0.0 || wm > 1.0 || ws < 0.0 || ws > 1.0 || std::abs(wm + ws - 1.0) > 1e-9)
        throw std::invalid_argument("task weights must lie in [0,1] and sum to 1, got (" + std::to_string(wm) +
                                    ", " + std::to_string(ws) + ")");
}

namespace {

std::vector<LayerSpec> shared_specs(const ModelConfig& cfg) {
    std::vector<LayerSpec> specs;
    const int shared_blocks = cfg.variant == ModelVariant::base ? 1 : 2;
    for (int i = 0; i < shared_blocks; ++i) {
        specs.push_back(LayerSpec::conv2d(cfg.c_sh, cfg.kernel));
        specs.push_back(LayerSpec::batchnorm());
        specs.push_back(LayerSpec::relu());
        specs.push_back(LayerSpec::dropout(cfg.dropout_conv));
        specs.push_back(LayerSpec::maxpool2x2());
    }
    return specs;
}

std::vector<LayerSpec> branch_specs(const ModelConfig& cfg, int conv_filters, int fc_units, int classes) {
    std::vector<LayerSpec> specs;
    const int convs = cfg.variant == ModelVariant::c2_sh_tasks ? 2 : 1;
    for (int i = 0; i < convs; ++i) {
        specs.push_back(LayerSpec::conv2d(conv_filters, cfg.kernel));
        specs.push_back(LayerSpec::batchnorm());
        specs.push_back(LayerSpec::relu());
        specs.push_back(LayerSpec::dropout(cfg.dropout_conv));
    }
    specs.push_back(LayerSpec::flatten());
    specs.push_back(LayerSpec::dense(fc_units));
    specs.push_back(LayerSpec::batchnorm());
    specs.push_back(LayerSpec::relu());
    specs.push_back(LayerSpec::dropout(cfg.dropout_fc));
    specs.push_back(LayerSpec::dense(classes));
    specs.push_back(LayerSpec::softmax());
    return specs;
}

void validate_config(const ModelConfig& cfg) {
    if (cfg.c_sh < 1 || cfg.c_m < 1 || cfg.f_m < 1 || cfg.c_s < 1 || cfg.f_s < 1)
        throw std::invalid_argument("model config: density values must be positive");
    if (cfg.n_mod_classes < 2 || cfg.n_sig_classes < 2)
        throw std::invalid_argument("model config: class counts must be >= 2");
}

}  // namespace

MtlModel MtlModel::build(const ModelConfig& cfg, std::uint64_t seed) {
    validate_config(cfg);
    MtlModel m;
    m.cfg_ = cfg;
    Rng rng(mix_seed(seed, 0xabcd));
    std::vector<int> trunk_out;
    m.shared_ = nn::build_network(shared_specs(cfg), {16, 16, 1}, rng, &trunk_out);
    m.mod_branch_ = nn::build_network(branch_specs(cfg, cfg.c_m, cfg.f_m, cfg.n_mod_classes), trunk_out, rng);
    m.sig_branch_ = nn::build_network(branch_specs(cfg, cfg.c_s, cfg.f_s, cfg.n_sig_classes), trunk_out, rng);
    return m;
}

std::pair<Tensor, Tensor> MtlModel::forward(const Tensor& x, nn::Mode mode) {
    if (x.rank() != 4 || x.shape[1] != 16 || x.shape[2] != 16 || x.shape[3] != 1)
        throw std::invalid_argument("mtl forward: expected [N,16,16,1] input, got " + x.shape_str());
    const Tensor trunk = shared_.forward(x, mode);
    Tensor mod = mod_branch_.forward(trunk, mode);
    Tensor sig = sig_branch_.forward(trunk, mode);
    return {std::move(mod), std::move(sig)};
}

void MtlModel::backward(const Tensor& grad_mod_probs, const Tensor& grad_sig_probs) {
    Tensor g = mod_branch_.backward(grad_mod_probs);
    const Tensor gs = sig_branch_.backward(grad_sig_probs);
    require_same_shape(g, gs, "mtl backward: branch gradients");
    for (std::int64_t i = 0; i < g.size(); ++i) g[i] += gs[i];
    shared_.backward(g);
}

std::vector<nn::NamedParam> MtlModel::named_params() {
    std::vector<nn::NamedParam> out;
    for (auto& p : shared_.named_params()) out.push_back({"shared." + p.name, p.value, p.grad});
    for (auto& p : mod_branch_.named_params()) out.push_back({"mod." + p.name, p.value, p.grad});
    for (auto& p : sig_branch_.named_params()) out.push_back({"sig." + p.name, p.value, p.grad});
    return out;
}

std::vector<Tensor*> MtlModel::trainable_values() {
    std::vector<Tensor*> out;
    for (auto& p : named_params())
        if (p.grad) out.push_back(p.value);
    return out;
}

std::vector<const Tensor*> MtlModel::trainable_grads() {
    std::vector<const Tensor*> out;
    for (auto& p : named_params())
        if (p.grad) out.push_back(p.grad);
    return out;
}

void MtlModel::reseed_dropout(std::uint64_t seed) {
    shared_.reseed_dropout(mix_seed(seed, 1));
    mod_branch_.reseed_dropout(mix_seed(seed, 2));
    sig_branch_.reseed_dropout(mix_seed(seed, 3));
}

std::int64_t MtlModel::parameter_count() {
    std::int64_t n = 0;
    for (auto& p : named_params())
        if (p.grad) n += p.value->size();
    return n;
}

void MtlModel::quantize_f32() {
    for (auto& p : named_params()) p.value->quantize_f32();
}

void MtlModel::save_checkpoint(const std::string& path) {
    json meta;
    meta["model_config"] = json::parse(model_config_to_json(cfg_));
    std::vector<std::pair<std::string, const Tensor*>> tensors;
    for (auto& p : named_params()) tensors.emplace_back(p.name, p.value);
    nn::save_checkpoint(path, meta.dump(), tensors);
}

MtlModel MtlModel::load_checkpoint(const std::string& path) {
    const nn::Checkpoint ckpt = nn::load_checkpoint(path);
    const json meta = json::parse(ckpt.meta_json);
    const ModelConfig cfg = model_config_from_json(meta.at("model_config").dump());
    MtlModel m = build(cfg, 0);

    std::map<std::string, const Tensor*> by_name;
    for (const auto& [name, t] : ckpt.tensors) by_name[name] = &t;
    for (auto& p : m.named_params()) {
        const auto it = by_name.find(p.name);
        if (it == by_name.end()) throw std::runtime_error("checkpoint missing tensor " + p.name);
        if (it->second->shape != p.value->shape)
            throw std::runtime_error("checkpoint tensor " + p.name + " has shape " + it->second->shape_str() +
                                     ", model expects " + p.value->shape_str());
        *p.value = *it->second;
    }
    return m;
}

MtlLoss mtl_loss(const Tensor& mod_probs, const Tensor& sig_probs, const std::vector<int>& mod_labels,
                 const std::vector<int>& sig_labels, const TaskWeights& w) {
    auto mean_ce = [](const Tensor& probs, const std::vector<int>& labels) {
        const int n = probs.shape[0], classes = probs.shape[1];
        if (labels.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("mtl_loss: label count does not match batch size");
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const int label = labels[static_cast<std::size_t>(i)];
            if (label < 0 || label >= classes)
                throw std::invalid_argument("mtl_loss: label " + std::to_string(label) + " out of range [0," +
                                            std::to_string(classes) + ")");
            sum += -std::log(std::max(probs[static_cast<std::int64_t>(i) * classes + label], 1e-12));
        }
        return sum / static_cast<double>(n);
    };
    MtlLoss loss{};
    loss.mod = mean_ce(mod_probs, mod_labels);
    loss.sig = mean_ce(sig_probs, sig_labels);
    loss.total = w.w_mod * loss.mod + w.w_sig * loss.sig;
    return loss;
}

Tensor ce_prob_grad(const Tensor& probs, const std::vector<int>& labels, double weight) {
    const int n = probs.shape[0], classes = probs.shape[1];
    Tensor g(probs.shape);
    for (int i = 0; i < n; ++i) {
        const int label = labels[static_cast<std::size_t>(i)];
        const double p = std::max(probs[static_cast<std::int64_t>(i) * classes + label], 1e-12);
        g[static_cast<std::int64_t>(i) * classes + label] = -weight / (p * static_cast<double>(n));
    }
    return g;
}

}  // namespace radcom::mtl
