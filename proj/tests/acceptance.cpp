// Acceptance suite: runs every release criterion and prints one PASS/FAIL
// line per criterion. Exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "detgen/binning.hpp"
#include "detgen/config.hpp"
#include "detgen/dataset.hpp"
#include "detgen/detection.hpp"
#include "detgen/evaluation.hpp"
#include "detgen/ga.hpp"
#include "detgen/rng.hpp"
#include "detgen/schema.hpp"
#include "synth_corpus.hpp"

namespace fs = std::filesystem;
using namespace detgen;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s - %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    if (!ok) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LoadOptions quiet() {
    LoadOptions o;
    o.warn = [](const std::string&) {};
    return o;
}

const char* kDataDir = "acceptance_data";
const char* kMapping = DETGEN_MAPPING_FILE;
const char* kCli = DETGEN_CLI_PATH;

// ---------------------------------------------------------------------------
// Criterion 1: discretizer oracle + invariants on fitted features
// ---------------------------------------------------------------------------

int oracle_bin(double value, const FeatureBinning& b) {
    if (b.delta == 0) return 0;
    int bin = 0;
    for (int i = 1; i <= b.k - 1; ++i)
        if (value >= b.x_min + i * b.delta) bin = i;
    return bin;
}

void criterion_discretizer(const BinningModel& model, const FeatureSchema& schema) {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(1001);
    std::size_t agreements = 0;
    const std::size_t cases = 1000;
    for (std::size_t i = 0; i < cases; ++i) {
        FeatureBinning b;
        b.x_min = rng.uniform01() * 100 - 50;
        b.k = 1 + static_cast<int>(rng.uniform_index(12));
        b.x_max = b.x_min + rng.uniform01() * 500;
        b.delta = compute_bin_width(b.x_min, b.x_max, b.k);
        double v = b.x_min - 20 + rng.uniform01() * (b.x_max - b.x_min + 40);
        if (assign_bin(v, b) == oracle_bin(v, b)) ++agreements;
    }

    bool invariants = true;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const auto& ob = model.binning(i);
        if (!ob) continue;
        const auto& b = *ob;
        // equal width within one ulp of the boundary arithmetic
        for (int j = 1; j + 1 <= b.k - 1; ++j) {
            double w = (b.x_min + (j + 1) * b.delta) - (b.x_min + j * b.delta);
            if (std::abs(w - b.delta) > 4 * std::abs(b.delta) *
                                            std::numeric_limits<double>::epsilon() * b.k)
                invariants = false;
        }
        // monotone over a sampled grid
        int prev = 0;
        for (int s = 0; s <= 100; ++s) {
            double v = b.x_min - 10 + s * ((b.x_max - b.x_min + 20) / 100.0);
            int bin = assign_bin(v, b);
            if (bin < prev) invariants = false;
            prev = bin;
        }
    }
    double secs = elapsed_s(t0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "%zu/1000 oracle agreements, invariants %s, %.3fs",
                  agreements, invariants ? "ok" : "violated", secs);
    report("discretizer oracle", agreements == cases && invariants && secs < 1.0, detail);
}

// ---------------------------------------------------------------------------
// Criterion 2: metric suite
// ---------------------------------------------------------------------------

void criterion_metrics() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(1002);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        Genes x(18), y(18), z(18);
        for (std::size_t j = 0; j < 18; ++j) {
            x[j] = static_cast<int>(rng.uniform_index(10));
            y[j] = static_cast<int>(rng.uniform_index(10));
            z[j] = static_cast<int>(rng.uniform_index(10));
        }
        for (auto [m, p] : std::initializer_list<std::pair<Metric, std::optional<double>>>{
                 {Metric::Euclidean, std::nullopt},
                 {Metric::Hamming, std::nullopt},
                 {Metric::Minkowski, 0.5},
                 {Metric::Minkowski, 18.0}}) {
            double dxy = distance(x, y, m, p);
            if (distance(x, x, m, p) != 0.0) ok = false;
            if (std::abs(dxy - distance(y, x, m, p)) > 1e-12) ok = false;
            if (dxy < 0) ok = false;
        }
        double e = distance(x, y, Metric::Euclidean);
        double m2 = distance(x, y, Metric::Minkowski, 2.0);
        if (e != 0 && std::abs(m2 - e) / e > 1e-9) ok = false;
        double h = distance(x, y, Metric::Hamming);
        double m1 = distance(x, y, Metric::Minkowski, 1.0);
        if (h != 0 && std::abs(m1 - h) / h > 1e-9) ok = false;
        // triangle inequality for p >= 1 only; p=0.5 is deliberately exempt
        for (auto [m, p] : std::initializer_list<std::pair<Metric, std::optional<double>>>{
                 {Metric::Euclidean, std::nullopt},
                 {Metric::Hamming, std::nullopt},
                 {Metric::Minkowski, 1.0},
                 {Metric::Minkowski, 18.0}}) {
            if (distance(x, z, m, p) > distance(x, y, m, p) + distance(y, z, m, p) + 1e-9)
                ok = false;
        }
    }
    double secs = elapsed_s(t0);
    char detail[64];
    std::snprintf(detail, sizeof detail, "%.3fs", secs);
    report("metric suite", ok && secs < 1.0, detail);
}

// ---------------------------------------------------------------------------
// Criterion 3: fitness oracle
// ---------------------------------------------------------------------------

void criterion_fitness_oracle() {
    Rng rng(1003);
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng.uniform_index(1000);
        std::size_t len = 1 + rng.uniform_index(8);
        int domain = 2 + static_cast<int>(rng.uniform_index(4));
        std::vector<EncodedSample> self;
        for (std::size_t i = 0; i < n; ++i) {
            Genes g(len);
            for (auto& v : g) v = static_cast<int>(rng.uniform_index(domain));
            self.push_back(EncodedSample{std::move(g), Label::Normal});
        }
        SelfIndex idx(self);
        for (int q = 0; q < 25; ++q) {
            Genes probe(len);
            for (auto& v : probe) v = static_cast<int>(rng.uniform_index(domain));
            if (rng.uniform01() < 0.5) probe = self[rng.uniform_index(n)].genes;
            std::size_t a = 0;
            for (const auto& s : self)
                if (s.genes == probe) ++a;
            double naive = static_cast<double>(a) / static_cast<double>(n);
            if (idx.fitness(probe) != naive) ok = false;
        }
    }
    report("fitness oracle", ok);
}

// ---------------------------------------------------------------------------
// Criterion 4: steady-state replacement semantics
// ---------------------------------------------------------------------------

void criterion_algorithm_semantics() {
    bool ok = true;
    auto mk = [](Genes g, double f) { return Detector{std::move(g), f}; };

    {  // replace parent1
        auto p1 = mk({0, 0, 1}, 0.2), p2 = mk({9, 9, 9}, 0.9);
        replace_step(p1, p2, mk({0, 0, 0}, 0.5), Metric::Euclidean, std::nullopt);
        if (p1.genes != Genes{0, 0, 0} || p2.genes != Genes{9, 9, 9}) ok = false;
    }
    {  // replace parent2
        auto p1 = mk({9, 9, 9}, 0.9), p2 = mk({0, 0, 1}, 0.2);
        replace_step(p1, p2, mk({0, 0, 0}, 0.5), Metric::Euclidean, std::nullopt);
        if (p2.genes != Genes{0, 0, 0} || p1.genes != Genes{9, 9, 9}) ok = false;
    }
    {  // tie routes to the parent2 branch
        auto p1 = mk({0, 0, 2}, 0.9), p2 = mk({2, 0, 0}, 0.2);
        replace_step(p1, p2, mk({1, 0, 1}, 0.5), Metric::Euclidean, std::nullopt);
        if (p1.genes != Genes{0, 0, 2} || p2.genes != Genes{1, 0, 1}) ok = false;
    }
    {  // no replacement
        auto p1 = mk({0, 0, 1}, 0.6), p2 = mk({9, 9, 9}, 0.7);
        replace_step(p1, p2, mk({0, 0, 0}, 0.1), Metric::Euclidean, std::nullopt);
        if (p1.genes != Genes{0, 0, 1} || p2.genes != Genes{9, 9, 9}) ok = false;
    }

    // 200-generation toy run: max fitness never decreases
    std::vector<EncodedSample> self;
    Rng rng(1004);
    for (int i = 0; i < 60; ++i) self.push_back(EncodedSample{{0, 0, 0, 0}, Label::Normal});
    for (int i = 0; i < 25; ++i) self.push_back(EncodedSample{{1, 2, 0, 1}, Label::Normal});
    for (int i = 0; i < 10; ++i) self.push_back(EncodedSample{{3, 1, 2, 0}, Label::Normal});
    for (int i = 0; i < 5; ++i) {
        Genes g(4);
        for (auto& v : g) v = static_cast<int>(rng.uniform_index(4));
        self.push_back(EncodedSample{std::move(g), Label::Normal});
    }
    GAConfig cfg;
    cfg.population_size = 40;
    cfg.generations = 200;
    cfg.mutation_rate = 0.5 / 4.0;
    cfg.rng_seed = 2026;
    auto res = evolve(cfg, self, {4, 4, 4, 4});
    double prev = res.initial.best_fitness;
    for (const auto& st : res.trace) {
        if (st.best_fitness + 1e-15 < prev) ok = false;
        prev = st.best_fitness;
    }
    if (res.trace.size() != 200) ok = false;
    report("steady-state replacement semantics", ok);
}

// ---------------------------------------------------------------------------
// Criteria on the corpus: determinism, regime replication, sweep, integrity
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// report files carry a wall-clock duration column; strip it before comparing
std::string strip_duration_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        auto comma = line.rfind(',');
        out += line.substr(0, comma) + "\n";
    }
    return out;
}

// the config echo includes out_dir, which intentionally differs between runs
std::string strip_out_dir_echo(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.rfind("config out_dir", 0) == 0) continue;
        out += line + "\n";
    }
    return out;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(kCli) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

void write_pipeline_config(const std::string& path, const std::string& out_dir) {
    std::ofstream out(path);
    out << "train_file = " << kDataDir << "/KDDTrain+_20Percent.txt\n"
        << "test_files = " << kDataDir << "/KDDTest+.txt\n"
        << "mapping_file = " << kMapping << "\n"
        << "out_dir = " << out_dir << "\n"
        << "seed = 42\n"
        << "population_size = 200\n"
        << "generations = 200\n"
        << "metric = euclidean\n"
        << "report_format = csv\n";
}

void criterion_determinism() {
    bool ok = true;
    for (const char* dir : {"acc_run1", "acc_run2"}) {
        fs::remove_all(dir);
        std::string cfg = std::string(dir) + ".cfg";
        write_pipeline_config(cfg, dir);
        if (run_cli("fit --config " + cfg) != 0) ok = false;
        if (run_cli("train --config " + cfg) != 0) ok = false;
        if (run_cli("evaluate --config " + cfg) != 0) ok = false;
    }
    std::string det1 = strip_out_dir_echo(read_file("acc_run1/detectors.txt"));
    std::string det2 = strip_out_dir_echo(read_file("acc_run2/detectors.txt"));
    std::string model1 = read_file("acc_run1/model.txt");
    std::string model2 = read_file("acc_run2/model.txt");
    std::string rep1 = strip_duration_column(read_file("acc_run1/report.csv"));
    std::string rep2 = strip_duration_column(read_file("acc_run2/report.csv"));
    bool identical = !det1.empty() && det1 == det2 && model1 == model2 && rep1 == rep2;
    report("pipeline determinism", ok && identical,
           identical ? "detector files and reports byte-identical (duration column excluded)"
                     : "outputs differ");
}

struct RegimeResult {
    Rates r;
    bool valid = false;
};

RegimeResult criterion_regime(const FeatureSchema& schema, const BinningModel& model,
                              const ServiceCategoryMap& services,
                              const std::vector<EncodedSample>& self_encoded) {
    RegimeResult out;
    GAConfig cfg;
    cfg.population_size = 200;
    cfg.generations = 200;
    cfg.metric = Metric::Euclidean;
    cfg.rng_seed = 42;

    auto res = evolve(cfg, self_encoded, schema.domain_sizes());
    res.detectors.schema_fingerprint = model.fingerprint(schema);
    Classifier clf(res.detectors, model.fingerprint(schema));

    auto test = load_records(std::string(kDataDir) + "/KDDTest+.txt", schema, quiet());
    auto encoded = model.encode_all(test, schema, services);
    auto verdicts = clf.classify_all(encoded);
    auto r = rates(score(verdicts, encoded));
    out.r = r;
    out.valid = r.tpr && r.tnr && r.fnr;

    // The reference experiment reports the normal-sample miss rate under the
    // name FPR; that quantity is 1 - TPR (this artifact's fnr).
    bool ok = out.valid && *r.tpr >= 0.90 && *r.fnr <= 0.10 && *r.tnr <= 0.65 &&
              r.dr >= 0.60 && r.dr <= 0.80;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "tpr=%.4f (>=0.90), miss-rate(1-tpr)=%.4f (<=0.10), tnr=%.4f (<=0.65), "
                  "dr=%.4f (in [0.60,0.80])",
                  r.tpr.value_or(-1), r.fnr.value_or(-1), r.tnr.value_or(-1), r.dr);
    report("regime replication", ok, detail);
    return out;
}

void criterion_reduced_sweep(const FeatureSchema& schema, const BinningModel& model,
                             const ServiceCategoryMap& services,
                             const std::vector<EncodedSample>& self_encoded) {
    auto test = load_records(std::string(kDataDir) + "/KDDTest+.txt", schema, quiet());
    auto encoded = model.encode_all(test, schema, services);
    std::vector<NamedTestSet> tests = {{"KDDTest+", &encoded}};

    std::vector<GAConfig> grid;
    std::uint64_t idx = 0;
    for (auto [metric, p] : std::initializer_list<std::pair<Metric, std::optional<double>>>{
             {Metric::Euclidean, std::nullopt}, {Metric::Minkowski, 0.5}}) {
        for (int pop : {200, 600}) {
            for (int gens : {200, 1000}) {
                GAConfig c;
                c.population_size = pop;
                c.generations = gens;
                c.metric = metric;
                c.minkowski_p = p;
                c.rng_seed = derive_seed(42, idx++);
                grid.push_back(c);
            }
        }
    }
    auto reports = sweep(grid, self_encoded, tests, schema.domain_sizes(),
                         model.fingerprint(schema), {}, 4);
    bool ok = reports.size() == 8;
    double dr200 = 0, dr600 = 0;
    int n200 = 0, n600 = 0;
    for (const auto& r : reports) {
        if (!r.error.empty()) ok = false;
        if (r.population_size == 200) { dr200 += r.r.dr; ++n200; }
        if (r.population_size == 600) { dr600 += r.r.dr; ++n600; }
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "8 cells, mean dr pop200=%.4f vs pop600=%.4f (informational: the reference "
                  "observes pop 200 generally better; not a gate)",
                  n200 ? dr200 / n200 : -1, n600 ? dr600 / n600 : -1);
    report("reduced sweep grid", ok, detail);
}

void criterion_dataset_integrity(const FeatureSchema& schema,
                                 const std::vector<LabeledSample>& records,
                                 const std::vector<LabeledSample>& self) {
    // independent count: naive text pass over the raw file
    std::ifstream in(std::string(kDataDir) + "/KDDTrain+_20Percent.txt");
    std::string line;
    std::size_t normals = 0, lines = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++lines;
        std::size_t field = 0, start = 0;
        std::string label;
        for (std::size_t pos = 0; pos <= line.size(); ++pos) {
            if (pos == line.size() || line[pos] == ',') {
                if (field == 41) label = line.substr(start, pos - start);
                start = pos + 1;
                ++field;
            }
        }
        if (label == "normal") ++normals;
    }
    bool ok = self.size() == normals && records.size() == lines;
    for (const auto& s : records)
        if (s.fields.size() != schema.size()) ok = false;
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "loader normals=%zu, independent count=%zu, %zu records x 18 features",
                  self.size(), normals, records.size());
    report("dataset integrity", ok, detail);
}

}  // namespace

int main() {
    std::printf("acceptance corpus: synthetic NSL-KDD-format data (seed 77)\n");
    fs::remove_all(kDataDir);
    fs::create_directories(kDataDir);
    synth::write_corpus(kDataDir, 77);

    auto schema = FeatureSchema::nslkdd18();
    auto services = ServiceCategoryMap::load(kMapping);
    auto records =
        load_records(std::string(kDataDir) + "/KDDTrain+_20Percent.txt", schema, quiet());
    auto self = split_self(records, quiet());
    auto model = BinningModel::fit(self, schema, quiet());
    auto self_encoded = model.encode_all(self, schema, services);

    criterion_discretizer(model, schema);
    criterion_metrics();
    criterion_fitness_oracle();
    criterion_algorithm_semantics();
    criterion_determinism();
    criterion_regime(schema, model, services, self_encoded);
    criterion_reduced_sweep(schema, model, services, self_encoded);
    criterion_dataset_integrity(schema, records, self);

    std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
