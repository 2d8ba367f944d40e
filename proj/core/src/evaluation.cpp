#include "detgen/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "detgen/errors.hpp"

namespace detgen {

namespace {

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
}

}  // namespace

ConfusionMatrix score(const std::vector<Verdict>& verdicts, const std::vector<Label>& truths) {
    if (verdicts.size() != truths.size())
        throw DataError("score: verdicts and truths differ in length");
    if (verdicts.empty()) throw DataError("score: empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        bool pred_normal = verdicts[i].label == Label::Normal;
        bool true_normal = truths[i] == Label::Normal;
        if (true_normal && pred_normal) ++cm.tp;
        else if (true_normal && !pred_normal) ++cm.fn;
        else if (!true_normal && pred_normal) ++cm.fp;
        else ++cm.tn;
    }
    return cm;
}

ConfusionMatrix score(const std::vector<Verdict>& verdicts,
                      const std::vector<EncodedSample>& samples) {
    std::vector<Label> truths;
    truths.reserve(samples.size());
    for (const auto& s : samples) truths.push_back(s.label);
    return score(verdicts, truths);
}

Rates rates(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DataError("rates: empty confusion matrix");
    Rates r;
    r.dr = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    if (cm.tp + cm.fn > 0) {
        r.tpr = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
        r.fnr = static_cast<double>(cm.fn) / static_cast<double>(cm.fn + cm.tp);
    }
    if (cm.tn + cm.fp > 0) {
        r.tnr = static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp);
        r.fpr = static_cast<double>(cm.fp) / static_cast<double>(cm.fp + cm.tn);
    }
    return r;
}

std::vector<EvaluationReport> sweep(const std::vector<GAConfig>& configs,
                                    const std::vector<EncodedSample>& self_set,
                                    const std::vector<NamedTestSet>& test_sets,
                                    const std::vector<int>& domains,
                                    const std::string& model_fingerprint,
                                    const ExtractOptions& extract, int jobs) {
    if (configs.empty()) throw ConfigError("sweep: no configurations");
    if (test_sets.empty()) throw ConfigError("sweep: no test sets");

    std::vector<EvaluationReport> reports(configs.size() * test_sets.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            std::size_t run = next.fetch_add(1);
            if (run >= configs.size()) break;
            const GAConfig& cfg = configs[run];
            auto t0 = std::chrono::steady_clock::now();
            std::string error;
            DetectorSet ds;
            try {
                EvolveResult res = evolve(cfg, self_set, domains, extract);
                ds = std::move(res.detectors);
                ds.schema_fingerprint = model_fingerprint;
            } catch (const std::exception& e) {
                error = e.what();
            }
            for (std::size_t t = 0; t < test_sets.size(); ++t) {
                EvaluationReport& rep = reports[run * test_sets.size() + t];
                rep.population_size = cfg.population_size;
                rep.generations = cfg.generations;
                rep.metric = cfg.metric;
                rep.minkowski_p = cfg.minkowski_p;
                rep.seed = cfg.rng_seed;
                rep.dataset = test_sets[t].name;
                if (!error.empty()) {
                    rep.error = error;
                    continue;
                }
                try {
                    Classifier clf(ds, model_fingerprint);
                    auto verdicts = clf.classify_all(*test_sets[t].samples);
                    rep.cm = score(verdicts, *test_sets[t].samples);
                    rep.r = rates(rep.cm);
                } catch (const std::exception& e) {
                    rep.error = e.what();
                }
                auto t1 = std::chrono::steady_clock::now();
                rep.duration_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
            }
        }
    };

    int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < nthreads; ++i) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }
    return reports;
}

ReportFormat parse_report_format(const std::string& name) {
    if (name == "table" || name == "table-text") return ReportFormat::TableText;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw ConfigError("unknown report format: '" + name + "' (expected table|csv|json)");
}

namespace {

const char* kCsvHeader = "pop_size,generations,metric,p,dataset,dr,tpr,fpr,tnr,fnr,seed,duration";

std::string csv_row(const EvaluationReport& r) {
    std::ostringstream os;
    os << r.population_size << "," << r.generations << "," << to_string(r.metric) << ","
       << (r.minkowski_p ? fmt(*r.minkowski_p, "%g") : "") << "," << r.dataset << ",";
    if (r.error.empty()) {
        os << fmt(r.r.dr) << "," << fmt_opt(r.r.tpr) << "," << fmt_opt(r.r.fpr) << ","
           << fmt_opt(r.r.tnr) << "," << fmt_opt(r.r.fnr);
    } else {
        os << ",,,,";
    }
    os << "," << r.seed << "," << fmt(r.duration_ms, "%.3f");
    return os.str();
}

nlohmann::json json_of(const EvaluationReport& r) {
    nlohmann::json j;
    j["pop_size"] = r.population_size;
    j["generations"] = r.generations;
    j["metric"] = to_string(r.metric);
    if (r.minkowski_p) j["p"] = *r.minkowski_p; else j["p"] = nullptr;
    j["dataset"] = r.dataset;
    j["seed"] = r.seed;
    j["duration_ms"] = r.duration_ms;
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j;
    }
    j["confusion"] = {{"tp", r.cm.tp}, {"fp", r.cm.fp}, {"tn", r.cm.tn}, {"fn", r.cm.fn}};
    j["dr"] = r.r.dr;
    auto put = [&j](const char* k, const std::optional<double>& v) {
        if (v) j[k] = *v; else j[k] = nullptr;
    };
    put("tpr", r.r.tpr);
    put("tnr", r.r.tnr);
    put("fpr", r.r.fpr);
    put("fnr", r.r.fnr);
    return j;
}

}  // namespace

std::string render_report(const std::vector<EvaluationReport>& reports, ReportFormat format) {
    if (reports.empty()) throw ConfigError("emit_report: no reports");
    std::ostringstream os;
    switch (format) {
        case ReportFormat::Csv: {
            os << kCsvHeader << "\n";
            for (const auto& r : reports) os << csv_row(r) << "\n";
            break;
        }
        case ReportFormat::Json: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(json_of(r));
            os << arr.dump(2) << "\n";
            break;
        }
        case ReportFormat::TableText: {
            std::vector<const EvaluationReport*> sorted;
            for (const auto& r : reports) sorted.push_back(&r);
            std::stable_sort(sorted.begin(), sorted.end(),
                             [](const EvaluationReport* a, const EvaluationReport* b) {
                                 if (a->metric != b->metric) return a->metric < b->metric;
                                 if (a->population_size != b->population_size)
                                     return a->population_size < b->population_size;
                                 return a->generations < b->generations;
                             });
            os << "# dr = (tp+tn)/total (overall accuracy); positive class = Normal\n";
            os << kCsvHeader << "\n";
            for (const auto* r : sorted) os << csv_row(*r) << "\n";
            break;
        }
    }
    return os.str();
}

void emit_report(const std::vector<EvaluationReport>& reports, ReportFormat format,
                 const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write report: " + path);
    out << render_report(reports, format);
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace detgen
