#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "radcom/data/generate.hpp"
#include "radcom/report/csv.hpp"
#include "radcom/report/svg.hpp"
#include "radcom/train/sweeps.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace radcom;

namespace {

// Exit codes: 0 ok, 2 usage errors, 3 data errors (missing/corrupt files,
// bad keys), 4 internal failures.
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitRuntime = 4;

struct ExperimentConfig {
    data::DatasetKind kind = data::DatasetKind::RadComAWGN;
    int frames_per_stratum = 600;
    std::uint64_t master_seed = 1;
    data::GenerateOptions gen{};
    mtl::ModelConfig model{};
    train::TrainConfig trainer{};
    int cm_snr_db = 10;
    train::WeightSweepOptions sweep{};

    json to_json() const {
        json j;
        j["dataset"] = {{"kind", data::to_string(kind)},
                        {"frames_per_stratum", frames_per_stratum},
                        {"master_seed", std::to_string(master_seed)},
                        {"mirror_paper", gen.mirror_paper},
                        {"snr_lo", gen.snr_lo},
                        {"snr_hi", gen.snr_hi}};
        j["model"] = json::parse(mtl::model_config_to_json(model));
        j["train"] = {{"epochs", trainer.epochs},     {"patience", trainer.patience},
                      {"lr", trainer.lr},             {"batch_size", trainer.batch_size},
                      {"w_mod", trainer.weights.w_mod}, {"w_sig", trainer.weights.w_sig},
                      {"seed", std::to_string(trainer.seed)}};
        j["classes"] = json::parse(synth::class_table_to_json(gen.class_table));
        j["dynamic"] = json::parse(chan::dynamic_config_to_json(gen.dynamic_config));
        j["eval"] = {{"cm_snr_db", cm_snr_db}};
        j["sweep"] = {{"probe_snr_db", sweep.probe_snr_db},
                      {"include_val_in_probe", sweep.include_val_in_probe}};
        return j;
    }

    static ExperimentConfig from_json(const json& j) {
        ExperimentConfig c;
        if (j.contains("dataset")) {
            const auto& d = j.at("dataset");
            if (d.contains("kind")) c.kind = data::dataset_kind_from_string(d.at("kind").get<std::string>());
            c.frames_per_stratum = d.value("frames_per_stratum", c.frames_per_stratum);
            if (d.contains("master_seed")) c.master_seed = std::stoull(d.at("master_seed").get<std::string>());
            c.gen.mirror_paper = d.value("mirror_paper", c.gen.mirror_paper);
            c.gen.snr_lo = d.value("snr_lo", c.gen.snr_lo);
            c.gen.snr_hi = d.value("snr_hi", c.gen.snr_hi);
        }
        if (j.contains("model")) c.model = mtl::model_config_from_json(j.at("model").dump());
        if (j.contains("train")) {
            const auto& t = j.at("train");
            c.trainer.epochs = t.value("epochs", c.trainer.epochs);
            c.trainer.patience = t.value("patience", c.trainer.patience);
            c.trainer.lr = t.value("lr", c.trainer.lr);
            c.trainer.batch_size = t.value("batch_size", c.trainer.batch_size);
            c.trainer.weights = mtl::TaskWeights(t.value("w_mod", 0.2), t.value("w_sig", 0.8));
            if (t.contains("seed")) c.trainer.seed = std::stoull(t.at("seed").get<std::string>());
        }
        if (j.contains("classes")) c.gen.class_table = synth::class_table_from_json(j.at("classes").dump());
        if (j.contains("dynamic")) c.gen.dynamic_config = chan::dynamic_config_from_json(j.at("dynamic").dump());
        if (j.contains("eval")) c.cm_snr_db = j.at("eval").value("cm_snr_db", c.cm_snr_db);
        if (j.contains("sweep")) {
            c.sweep.probe_snr_db = j.at("sweep").value("probe_snr_db", c.sweep.probe_snr_db);
            c.sweep.include_val_in_probe = j.at("sweep").value("include_val_in_probe", c.sweep.include_val_in_probe);
        }
        return c;
    }
};

ExperimentConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    json j;
    is >> j;
    return ExperimentConfig::from_json(j);
}

void write_provenance(const ExperimentConfig& cfg, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    report::write_file((out_dir / "experiment.json").string(), cfg.to_json().dump(2) + "\n");
}

std::vector<std::string> mod_names() {
    std::vector<std::string> v;
    for (int i = 0; i < synth::kNumModulations; ++i) v.push_back(synth::to_string(static_cast<synth::Modulation>(i)));
    return v;
}

std::vector<std::string> sig_names() {
    std::vector<std::string> v;
    for (int i = 0; i < synth::kNumSignalClasses; ++i) v.push_back(synth::to_string(static_cast<synth::SignalClass>(i)));
    return v;
}

void emit_eval_outputs(const train::EvalReport& report, const fs::path& out_dir, const std::string& stem) {
    report::write_file((out_dir / (stem + ".csv")).string(), report::eval_csv(report));
    report::write_file((out_dir / (stem + "_confusion_mod.csv")).string(),
                       report::confusion_csv(report.confusion_mod, mod_names()));
    report::write_file((out_dir / (stem + "_confusion_sig.csv")).string(),
                       report::confusion_csv(report.confusion_sig, sig_names()));
    report::write_file((out_dir / (stem + "_accuracy.svg")).string(),
                       report::svg_line_chart("Accuracy vs SNR", report.snr_levels,
                                              {{"modulation", report.acc_mod}, {"signal", report.acc_sig}}));
    report::write_file((out_dir / (stem + "_confusion_mod.svg")).string(),
                       report::svg_heatmap("Modulation confusion at " + std::to_string(report.cm_snr_db) + " dB",
                                           report.confusion_mod, mod_names()));
    report::write_file((out_dir / (stem + "_confusion_sig.svg")).string(),
                       report::svg_heatmap("Signal confusion at " + std::to_string(report.cm_snr_db) + " dB",
                                           report.confusion_sig, sig_names()));
}

data::DatasetContainer load_container(const std::string& path) {
    if (path.empty()) throw std::runtime_error("missing --dataset PATH");
    return data::DatasetContainer::load(path);
}

int cmd_generate(const ExperimentConfig& cfg, const std::string& out_dir, bool force) {
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    fs::create_directories(dir);
    const fs::path file = dir / (std::string(data::to_string(cfg.kind)) + ".rcds");
    if (fs::exists(file) && !force)
        throw std::runtime_error("refusing to overwrite " + file.string() + " (use --force)");

    const data::DatasetContainer c =
        data::generate_dataset(cfg.kind, cfg.frames_per_stratum, cfg.master_seed, cfg.gen);
    c.save(file.string());
    write_provenance(cfg, dir);

    const int n_snrs = (cfg.gen.snr_hi - cfg.gen.snr_lo) / 2 + 1;
    const std::size_t strata = c.size() / static_cast<std::size_t>(cfg.frames_per_stratum);
    std::cout << "wrote " << file.string() << "\n"
              << "  kind             " << data::to_string(cfg.kind) << "\n"
              << "  records          " << c.size() << "\n"
              << "  strata           " << strata << " (pairs x " << n_snrs << " SNR levels)\n"
              << "  frames/stratum   " << cfg.frames_per_stratum << "\n"
              << "  splits           " << c.splits.train.size() << "/" << c.splits.val.size() << "/"
              << c.splits.test.size() << " train/val/test\n";
    return 0;
}

int cmd_train(const ExperimentConfig& cfg, const std::string& dataset, const std::string& out_dir,
              const std::string& warm_checkpoint) {
    const data::DatasetContainer container = load_container(dataset);
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    write_provenance(cfg, dir);

    mtl::MtlModel model = mtl::MtlModel::build(cfg.model, cfg.trainer.seed);
    train::TrainHistory history;
    if (warm_checkpoint.empty()) {
        history = train::train(model, container, container.splits, cfg.trainer);
    } else {
        model = train::transfer_train(warm_checkpoint, cfg.model, container, container.splits, cfg.trainer,
                                      &history);
    }

    model.save_checkpoint((dir / "checkpoint.rcmw").string());
    report::write_file((dir / "history.csv").string(), report::history_csv(history));
    const train::EvalReport report = train::evaluate(model, container, container.splits.test, cfg.cm_snr_db);
    emit_eval_outputs(report, dir, "eval");

    std::cout << "trained " << cfg.model.describe() << " for " << history.stopped_epoch << " epochs (best "
              << history.best_epoch << ")\n"
              << "  val loss " << history.final_val.loss << "  acc mod/sig " << history.final_val.acc_mod << "/"
              << history.final_val.acc_sig << "\n"
              << "  test acc mod/sig " << report.overall_mod << "/" << report.overall_sig << "\n"
              << "  outputs in " << dir.string() << "\n";
    return 0;
}

int cmd_evaluate(const ExperimentConfig& cfg, const std::string& dataset, const std::string& checkpoint,
                 const std::string& out_dir) {
    const data::DatasetContainer container = load_container(dataset);
    if (checkpoint.empty()) throw std::runtime_error("missing --checkpoint PATH");
    mtl::MtlModel model = mtl::MtlModel::load_checkpoint(checkpoint);
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    write_provenance(cfg, dir);

    const train::EvalReport report = train::evaluate(model, container, container.splits.test, cfg.cm_snr_db);
    emit_eval_outputs(report, dir, "eval");
    std::cout << "evaluated " << model.config().describe() << " on " << container.splits.test.size()
              << " test records\n"
              << "  overall acc mod/sig " << report.overall_mod << "/" << report.overall_sig << "\n"
              << "  outputs in " << dir.string() << "\n";
    return 0;
}

int cmd_sweep_weights(const ExperimentConfig& cfg, const std::string& dataset, const std::string& out_dir) {
    const data::DatasetContainer container = load_container(dataset);
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    write_provenance(cfg, dir);

    const auto points = train::sweep_task_weights(container, cfg.model, cfg.trainer, cfg.sweep);
    report::write_file((dir / "sweep_weights.csv").string(), report::weight_sweep_csv(points));
    for (const auto& p : points) {
        char stem[64];
        std::snprintf(stem, sizeof(stem), "history_wsig_%.1f.csv", p.w_sig);
        report::write_file((dir / stem).string(), report::history_csv(p.history));
    }
    std::cout << "weight sweep: " << points.size() << " runs at " << cfg.sweep.probe_snr_db
              << " dB probe; results in " << dir.string() << "\n";
    return 0;
}

int cmd_sweep_density(const ExperimentConfig& cfg, const std::string& dataset, const std::string& out_dir) {
    const data::DatasetContainer container = load_container(dataset);
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    write_provenance(cfg, dir);

    const auto points = train::sweep_density(container, train::default_density_configs(), cfg.trainer, cfg.cm_snr_db);
    report::write_file((dir / "sweep_density.csv").string(), report::density_sweep_csv(points));
    for (std::size_t i = 0; i < points.size(); ++i) {
        report::write_file((dir / ("history_density_" + std::to_string(i) + ".csv")).string(),
                           report::history_csv(points[i].history));
        report::write_file((dir / ("eval_density_" + std::to_string(i) + ".csv")).string(),
                           report::eval_csv(points[i].report));
    }
    std::cout << "density sweep: " << points.size() << " configs; results in " << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radcom: multi-label radar/communication IQ dataset workbench"};
    app.require_subcommand(1);

    std::string config_path, dataset_path, checkpoint_path, out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false, force = false;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config JSON");
        sub->add_option("--dataset", dataset_path, "dataset container (.rcds)");
        sub->add_option("--checkpoint", checkpoint_path, "parameter checkpoint (.rcmw)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override dataset/train seed")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_flag("--force", force, "overwrite existing outputs");
    };

    std::string kind_str = "RadComAWGN";
    int frames_override = 0;
    auto* generate = app.add_subcommand("generate", "synthesize a dataset container");
    generate->add_option("kind", kind_str, "RadComAWGN or RadComDynamic");
    generate->add_option("--frames", frames_override, "frames per (pair, SNR) stratum");

    auto* tr = app.add_subcommand("train", "train the MTL model on a container");
    auto* ev = app.add_subcommand("evaluate", "evaluate a checkpoint on a container's test split");
    auto* sw = app.add_subcommand("sweep-weights", "task-weight sweep (11 training runs)");
    auto* sd = app.add_subcommand("sweep-density", "network-density sweep");
    auto* tf = app.add_subcommand("transfer", "train warm-started from --checkpoint");
    for (auto* sub : {generate, tr, ev, sw, sd, tf}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        ExperimentConfig cfg = load_config(config_path);
        if (seed_set) {
            cfg.master_seed = seed;
            cfg.trainer.seed = seed;
        }
        if (generate->parsed()) {
            cfg.kind = data::dataset_kind_from_string(kind_str);
            if (frames_override > 0) cfg.frames_per_stratum = frames_override;
            return cmd_generate(cfg, out_dir, force);
        }
        if (tr->parsed()) return cmd_train(cfg, dataset_path, out_dir, "");
        if (ev->parsed()) return cmd_evaluate(cfg, dataset_path, checkpoint_path, out_dir);
        if (sw->parsed()) return cmd_sweep_weights(cfg, dataset_path, out_dir);
        if (sd->parsed()) return cmd_sweep_density(cfg, dataset_path, out_dir);
        if (tf->parsed()) {
            if (checkpoint_path.empty()) throw std::invalid_argument("transfer requires --checkpoint PATH");
            return cmd_train(cfg, dataset_path, out_dir, checkpoint_path);
        }
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::runtime_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
