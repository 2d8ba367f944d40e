#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "detgen/binning.hpp"
#include "detgen/config.hpp"
#include "detgen/dataset.hpp"
#include "detgen/detection.hpp"
#include "detgen/errors.hpp"
#include "detgen/evaluation.hpp"
#include "detgen/ga.hpp"
#include "detgen/schema.hpp"

namespace fs = std::filesystem;
using namespace detgen;

namespace {

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> pop_size;
    std::optional<int> generations;
    std::optional<std::string> metric;
    std::optional<double> p;
    std::optional<std::string> out;
};

RunConfig load_run_config(const std::string& config_path, const CliOverrides& ov) {
    RunConfig cfg = RunConfig::load(config_path);
    if (ov.seed) cfg.apply("seed", std::to_string(*ov.seed));
    if (ov.pop_size) cfg.apply("population_size", std::to_string(*ov.pop_size));
    if (ov.generations) cfg.apply("generations", std::to_string(*ov.generations));
    if (ov.metric) cfg.apply("metric", *ov.metric);
    if (ov.p) cfg.apply("p", std::to_string(*ov.p));
    if (ov.out) cfg.apply("out_dir", *ov.out);
    return cfg;
}

void require_file(const std::string& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string(what) + " not configured");
    if (!fs::exists(path)) throw ConfigError(std::string(what) + " does not exist: " + path);
}

void require_inputs(const RunConfig& cfg, bool need_tests) {
    require_file(cfg.train_file, "train_file");
    require_file(cfg.mapping_file, "mapping_file");
    if (need_tests) {
        if (cfg.test_files.empty()) throw ConfigError("test_files not configured");
        for (const auto& f : cfg.test_files) require_file(f, "test file");
    }
    fs::create_directories(cfg.out_dir);
}

std::map<std::string, std::string> config_echo(const RunConfig& cfg) {
    auto echo = cfg.echo;
    echo["seed"] = std::to_string(cfg.ga.rng_seed);
    return echo;
}

void write_echo_comments(std::ofstream& out, const RunConfig& cfg,
                         const std::string& fingerprint) {
    out << "# fingerprint " << fingerprint << "\n";
    for (const auto& [k, v] : config_echo(cfg)) out << "# config " << k << " = " << v << "\n";
}

std::string dataset_name(const std::string& path) {
    return fs::path(path).filename().string();
}

struct LoadedTraining {
    FeatureSchema schema = FeatureSchema::nslkdd18();
    ServiceCategoryMap services;
    std::vector<LabeledSample> self;
};

LoadedTraining load_training(const RunConfig& cfg) {
    LoadedTraining t;
    t.services = ServiceCategoryMap::load(cfg.mapping_file);
    auto records = load_records(cfg.train_file, t.schema, {cfg.unknown_symbols, nullptr});
    t.self = split_self(records);
    if (t.self.empty()) throw DataError("train file contains no normal samples: " + cfg.train_file);
    return t;
}

int cmd_fit(const RunConfig& cfg) {
    require_inputs(cfg, false);
    auto t = load_training(cfg);
    BinningModel model = BinningModel::fit(t.self, t.schema);
    std::string model_path = cfg.out_dir + "/model.txt";
    model.save(model_path, t.schema);

    // Per-feature bin occupancy over the encoded self set.
    auto encoded = model.encode_all(t.self, t.schema, t.services, cfg.unknown_symbols);
    std::string summary_path = cfg.out_dir + "/encoding_summary.txt";
    std::ofstream out(summary_path);
    if (!out) throw DataError("cannot write " + summary_path);
    write_echo_comments(out, cfg, model.fingerprint(t.schema));
    for (std::size_t i = 0; i < t.schema.size(); ++i) {
        std::vector<std::size_t> hist(static_cast<std::size_t>(t.schema.domain_size(i)), 0);
        for (const auto& s : encoded) ++hist[static_cast<std::size_t>(s.genes[i])];
        out << t.schema.at(i).name;
        for (auto c : hist) out << " " << c;
        out << "\n";
    }
    std::cout << "wrote " << model_path << " (" << model.continuous_feature_count()
              << " continuous features, fingerprint " << model.fingerprint(t.schema) << ")\n";
    return 0;
}

int cmd_train(const RunConfig& cfg) {
    require_inputs(cfg, false);
    std::string model_path = cfg.out_dir + "/model.txt";
    require_file(model_path, "binning model (run `detgen fit` first)");
    auto t = load_training(cfg);
    BinningModel model = BinningModel::load(model_path, t.schema);
    auto self_encoded = model.encode_all(t.self, t.schema, t.services, cfg.unknown_symbols);

    EvolveResult res = evolve(cfg.ga, self_encoded, t.schema.domain_sizes(), cfg.extract);
    res.detectors.schema_fingerprint = model.fingerprint(t.schema);
    res.detectors.config_echo = config_echo(cfg);
    std::string det_path = cfg.out_dir + "/detectors.txt";
    res.detectors.save(det_path);

    std::string trace_path = cfg.out_dir + "/fitness_trace.csv";
    std::ofstream trace(trace_path);
    if (!trace) throw DataError("cannot write " + trace_path);
    trace << "generation,best_fitness,mean_fitness\n";
    char buf[80];
    for (std::size_t g = 0; g < res.trace.size(); ++g) {
        std::snprintf(buf, sizeof buf, "%zu,%.9f,%.9f\n", g + 1, res.trace[g].best_fitness,
                      res.trace[g].mean_fitness);
        trace << buf;
    }
    std::cout << "wrote " << det_path << " (" << res.detectors.detectors.size()
              << " detectors)\n";
    return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
    require_inputs(cfg, true);
    std::string model_path = cfg.out_dir + "/model.txt";
    std::string det_path = cfg.out_dir + "/detectors.txt";
    require_file(model_path, "binning model");
    require_file(det_path, "detector set (run `detgen train` first)");

    FeatureSchema schema = FeatureSchema::nslkdd18();
    ServiceCategoryMap services = ServiceCategoryMap::load(cfg.mapping_file);
    BinningModel model = BinningModel::load(model_path, schema);
    DetectorSet ds = DetectorSet::load(det_path);

    MatchOptions mopts;
    if (cfg.match_threshold) {
        mopts.threshold = cfg.match_threshold;
        mopts.metric = cfg.ga.metric;
        mopts.minkowski_p = cfg.ga.minkowski_p;
    }
    Classifier clf(ds, model.fingerprint(schema), mopts);

    std::vector<EvaluationReport> reports;
    for (const auto& test_file : cfg.test_files) {
        auto t0 = std::chrono::steady_clock::now();
        auto samples = load_records(test_file, schema, {cfg.unknown_symbols, nullptr});
        auto encoded = model.encode_all(samples, schema, services, cfg.unknown_symbols);
        auto verdicts = clf.classify_all(encoded);

        std::string name = dataset_name(test_file);
        write_verdicts_csv(cfg.out_dir + "/verdicts_" + name + ".csv", encoded, verdicts);

        EvaluationReport rep;
        rep.population_size = cfg.ga.population_size;
        rep.generations = cfg.ga.generations;
        rep.metric = cfg.ga.metric;
        rep.minkowski_p = cfg.ga.minkowski_p;
        rep.seed = cfg.ga.rng_seed;
        rep.dataset = name;
        rep.cm = score(verdicts, encoded);
        rep.r = rates(rep.cm);
        auto t1 = std::chrono::steady_clock::now();
        rep.duration_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        reports.push_back(rep);

        char line[256];
        std::snprintf(line, sizeof line, "%s: dr=%.4f tpr=%.4f tnr=%.4f\n", name.c_str(),
                      rep.r.dr, rep.r.tpr.value_or(-1), rep.r.tnr.value_or(-1));
        std::cout << line;
    }

    const char* ext = cfg.report_format == ReportFormat::Json
                          ? "json"
                          : (cfg.report_format == ReportFormat::Csv ? "csv" : "txt");
    emit_report(reports, cfg.report_format, cfg.out_dir + "/report." + std::string(ext));
    return 0;
}

int cmd_sweep(const RunConfig& cfg, bool dry_run) {
    require_inputs(cfg, true);
    std::string model_path = cfg.out_dir + "/model.txt";
    require_file(model_path, "binning model (run `detgen fit` first)");

    auto grid = cfg.sweep_grid();
    if (dry_run) {
        std::cout << "planned sweep grid (" << grid.size() << " runs):\n";
        for (const auto& c : grid) {
            std::cout << "  pop=" << c.population_size << " gens=" << c.generations
                      << " metric=" << to_string(c.metric);
            if (c.minkowski_p) std::cout << " p=" << *c.minkowski_p;
            std::cout << " seed=" << c.rng_seed << "\n";
        }
        return 0;
    }

    FeatureSchema schema = FeatureSchema::nslkdd18();
    ServiceCategoryMap services = ServiceCategoryMap::load(cfg.mapping_file);
    BinningModel model = BinningModel::load(model_path, schema);
    std::string fingerprint = model.fingerprint(schema);

    auto records = load_records(cfg.train_file, schema, {cfg.unknown_symbols, nullptr});
    auto self = split_self(records);
    if (self.empty()) throw DataError("train file contains no normal samples");
    auto self_encoded = model.encode_all(self, schema, services, cfg.unknown_symbols);

    std::vector<std::vector<EncodedSample>> test_data;
    std::vector<NamedTestSet> test_sets;
    test_data.reserve(cfg.test_files.size());
    for (const auto& f : cfg.test_files) {
        auto samples = load_records(f, schema, {cfg.unknown_symbols, nullptr});
        test_data.push_back(model.encode_all(samples, schema, services, cfg.unknown_symbols));
    }
    for (std::size_t i = 0; i < cfg.test_files.size(); ++i)
        test_sets.push_back(NamedTestSet{dataset_name(cfg.test_files[i]), &test_data[i]});

    std::string runs_dir = cfg.out_dir + "/runs";
    fs::create_directories(runs_dir);

    // Per-run report files make the sweep resumable: completed runs are
    // loaded back instead of re-executed.
    std::vector<EvaluationReport> all;
    std::vector<GAConfig> pending;
    std::vector<std::string> pending_paths;
    auto run_path = [&](std::size_t i) {
        std::ostringstream os;
        os << runs_dir << "/run_" << i << ".json";
        return os.str();
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!fs::exists(run_path(i))) {
            pending.push_back(grid[i]);
            pending_paths.push_back(run_path(i));
        }
    }
    if (!pending.empty()) {
        auto reports = sweep(pending, self_encoded, test_sets, schema.domain_sizes(),
                             fingerprint, cfg.extract, cfg.jobs);
        std::size_t per_run = test_sets.size();
        for (std::size_t i = 0; i < pending.size(); ++i) {
            std::vector<EvaluationReport> slice(reports.begin() + static_cast<long>(i * per_run),
                                                reports.begin() +
                                                    static_cast<long>((i + 1) * per_run));
            emit_report(slice, ReportFormat::Json, pending_paths[i]);
        }
    }

    // Combined table re-reads every per-run file so resumed sweeps merge.
    nlohmann::json combined = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::ifstream in(run_path(i));
        if (!in) throw DataError("missing sweep run output: " + run_path(i));
        nlohmann::json arr;
        in >> arr;
        for (auto& j : arr) combined.push_back(j);
    }
    std::vector<EvaluationReport> merged;
    for (const auto& j : combined) {
        EvaluationReport r;
        r.population_size = j["pop_size"];
        r.generations = j["generations"];
        r.metric = parse_metric(j["metric"]);
        if (!j["p"].is_null()) r.minkowski_p = j["p"].get<double>();
        r.seed = j["seed"];
        r.dataset = j["dataset"];
        r.duration_ms = j["duration_ms"];
        if (j.contains("error")) {
            r.error = j["error"];
        } else {
            r.cm = ConfusionMatrix{j["confusion"]["tp"], j["confusion"]["fp"],
                                   j["confusion"]["tn"], j["confusion"]["fn"]};
            r.r = rates(r.cm);
        }
        merged.push_back(r);
    }
    const char* ext = cfg.report_format == ReportFormat::Json
                          ? "json"
                          : (cfg.report_format == ReportFormat::Csv ? "csv" : "txt");
    emit_report(merged, cfg.report_format, cfg.out_dir + "/sweep_report." + std::string(ext));
    std::cout << "sweep complete: " << merged.size() << " report rows\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anomaly detector generation over NSL-KDD-format traffic records"};
    app.require_subcommand(1);

    std::string config_path;
    CliOverrides ov;
    bool dry_run = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--seed", ov.seed, "override rng seed");
        sub->add_option("--pop-size", ov.pop_size, "override population size");
        sub->add_option("--generations", ov.generations, "override generation count");
        sub->add_option("--metric", ov.metric,
                        "override metric (euclidean|hamming|minkowski:<p>|positional-hamming)");
        sub->add_option("--p", ov.p, "override minkowski p");
        sub->add_option("--out", ov.out, "override output directory");
    };

    auto* fit = app.add_subcommand("fit", "fit the equal-width binning model");
    auto* train = app.add_subcommand("train", "evolve a detector set");
    auto* evaluate = app.add_subcommand("evaluate", "score a detector set on test files");
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid");
    for (auto* sub : {fit, train, evaluate, sweep_cmd}) add_common(sub);
    sweep_cmd->add_flag("--dry-run", dry_run, "print the planned grid and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg = load_run_config(config_path, ov);
        if (app.got_subcommand(fit)) return cmd_fit(cfg);
        if (app.got_subcommand(train)) return cmd_train(cfg);
        if (app.got_subcommand(evaluate)) return cmd_evaluate(cfg);
        return cmd_sweep(cfg, dry_run);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
