#include "synth_corpus.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <vector>

#include "detgen/rng.hpp"

namespace detgen::synth {

namespace {

// Gene order mirrors the 18-feature schema:
// 0 duration 1 protocol 2 service 3 land 4 urgent 5 hot 6 num_failed_logins
// 7 logged_in 8 root_shell 9 su_attempted 10 num_file_creations 11 num_shells
// 12 is_host_login 13 is_guest_login 14 count 15 same_srv_rate
// 16 diff_srv_rate 17 srv_diff_host_rate
using Pattern = std::array<int, 18>;

const std::array<Pattern, 12> kNormalPatterns = {{
    {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 2, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0},
    {0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0},
    {0, 0, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 1},
    {1, 0, 3, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0},
    {0, 1, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 2, 0, 0},
    {0, 1, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2},
    {0, 2, 7, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0},
    {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 2, 1, 0},
    {0, 0, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 1, 1, 0},
    {0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 2, 0, 0},
    {2, 0, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 2, 0, 0},
}};

const char* kProtocolTokens[3] = {"tcp", "udp", "icmp"};

// Two tokens per port category (gene = category - 1); both land in the same
// category under data/service_categories.tsv.
const std::array<std::array<const char*, 2>, 9> kServiceTokens = {{
    {"http", "http_443"},
    {"smtp", "pop_3"},
    {"ftp", "ftp_data"},
    {"telnet", "ssh"},
    {"domain_u", "domain"},
    {"ntp_u", "time"},
    {"IRC", "X11"},
    {"private", "ecr_i"},
    {"other", "other"},
}};

const char* kDistinctAttacks[8] = {"neptune",  "portsweep", "satan", "ipsweep",
                                   "nmap",     "smurf",     "back",  "teardrop"};
const char* kStealthyAttacks[5] = {"guess_passwd", "warezclient", "warezmaster",
                                   "snmpgetattack", "multihop"};

const char* kFlags[4] = {"SF", "S0", "REJ", "RSTR"};

struct RowContext {
    Rng* rng;
    bool allow_overrange;  // test-set rows may exceed the training range
};

std::string rate_token(int gene) {
    switch (gene) {
        case 0: return "0.17";
        case 1: return "0.50";
        default: return "0.83";
    }
}

// Renders the full 43-column NSL-KDD line for one encoded pattern. Fields
// outside the 18-feature projection get plausible filler.
std::string render_row(const Pattern& g, const std::string& label, RowContext& ctx) {
    Rng& rng = *ctx.rng;
    std::string f[41];

    long duration = 100L * g[0] + 50;
    if (ctx.allow_overrange && g[0] == 7 && rng.uniform01() < 0.05)
        duration = 900 + static_cast<long>(rng.uniform_index(500));
    f[0] = std::to_string(duration);
    f[1] = kProtocolTokens[g[1]];
    f[2] = kServiceTokens[static_cast<std::size_t>(g[2])][rng.uniform_index(2)];
    f[3] = kFlags[rng.uniform_index(4)];
    f[4] = std::to_string(rng.uniform_index(5000));            // src_bytes
    f[5] = std::to_string(rng.uniform_index(5000));            // dst_bytes
    f[6] = std::to_string(g[3]);                               // land
    f[7] = "0";                                                // wrong_fragment
    f[8] = "0";                                                // urgent (zero range)
    f[9] = std::to_string(10 * g[5] + 5);                      // hot
    f[10] = std::to_string(g[6]);                              // num_failed_logins
    f[11] = std::to_string(g[7]);                              // logged_in
    f[12] = "0";                                               // num_compromised
    f[13] = std::to_string(g[8]);                              // root_shell
    f[14] = std::to_string(g[9]);                              // su_attempted
    f[15] = "0";                                               // num_root
    f[16] = std::to_string(2 * g[10] + 1);                     // num_file_creations
    f[17] = std::to_string(g[11]);                             // num_shells
    f[18] = "0";                                               // num_access_files
    f[19] = "0";                                               // num_outbound_cmds
    f[20] = std::to_string(g[12]);                             // is_host_login
    f[21] = std::to_string(g[13]);                             // is_guest_login
    long count = 50L * g[14] + 25;
    if (ctx.allow_overrange && g[14] == 9 && rng.uniform01() < 0.05)
        count = 600 + static_cast<long>(rng.uniform_index(400));
    f[22] = std::to_string(count);
    f[23] = std::to_string(1 + rng.uniform_index(100));        // srv_count
    for (int i = 24; i <= 27; ++i) {                           // serror/rerror rates
        char buf[8];
        std::snprintf(buf, sizeof buf, "%.2f", rng.uniform01());
        f[i] = buf;
    }
    f[28] = rate_token(g[15]);
    f[29] = rate_token(g[16]);
    f[30] = rate_token(g[17]);
    f[31] = std::to_string(rng.uniform_index(256));            // dst_host_count
    f[32] = std::to_string(rng.uniform_index(256));            // dst_host_srv_count
    for (int i = 33; i <= 40; ++i) {                           // dst_host_* rates
        char buf[8];
        std::snprintf(buf, sizeof buf, "%.2f", rng.uniform01());
        f[i] = buf;
    }

    std::string line;
    for (const auto& tok : f) {
        line += tok;
        line += ',';
    }
    line += label;
    line += ',';
    line += std::to_string(1 + rng.uniform_index(21));  // difficulty
    return line;
}

// All-extreme anchor rows pin the fitted range of every continuous feature so
// the gene <-> bin mapping is identical across seeds and scales.
std::string render_anchor(bool maxima, RowContext& ctx) {
    Pattern g{};
    std::string line;
    Rng& rng = *ctx.rng;
    std::string f[41];
    for (auto& tok : f) tok = "0";
    f[1] = "tcp";
    f[2] = "http";
    f[3] = "SF";
    if (maxima) {
        f[0] = "800";
        f[9] = "30";
        f[10] = "3";
        f[16] = "8";
        f[17] = "2";
        f[22] = "500";
        f[28] = "1.00";
        f[29] = "1.00";
        f[30] = "1.00";
    } else {
        f[28] = "0.00";
        f[29] = "0.00";
        f[30] = "0.00";
    }
    (void)g;
    for (const auto& tok : f) {
        line += tok;
        line += ',';
    }
    line += "normal,";
    line += std::to_string(1 + rng.uniform_index(21));
    return line;
}

// Random normal background outside the frequent patterns. Normal traffic
// never sets root_shell or is_host_login; those genes are reserved for
// attacks, which keeps the tail disjoint from the anomalous region.
Pattern random_tail_pattern(Rng& rng) {
    while (true) {
        Pattern g{};
        g[0] = static_cast<int>(rng.uniform_index(8));
        g[1] = static_cast<int>(rng.uniform_index(3));
        g[2] = static_cast<int>(rng.uniform_index(9));
        g[3] = static_cast<int>(rng.uniform_index(2));
        g[4] = 0;
        g[5] = static_cast<int>(rng.uniform_index(3));
        g[6] = static_cast<int>(rng.uniform_index(3));
        g[7] = static_cast<int>(rng.uniform_index(2));
        g[8] = 0;
        g[9] = static_cast<int>(rng.uniform_index(2));
        g[10] = static_cast<int>(rng.uniform_index(4));
        g[11] = static_cast<int>(rng.uniform_index(2));
        g[12] = 0;
        g[13] = static_cast<int>(rng.uniform_index(2));
        g[14] = static_cast<int>(rng.uniform_index(10));
        g[15] = static_cast<int>(rng.uniform_index(3));
        g[16] = static_cast<int>(rng.uniform_index(3));
        g[17] = static_cast<int>(rng.uniform_index(3));
        bool frequent = false;
        for (const auto& p : kNormalPatterns)
            if (p == g) frequent = true;
        if (!frequent) return g;
    }
}

Pattern distinct_attack_pattern(Rng& rng) {
    Pattern g = kNormalPatterns[rng.uniform_index(kNormalPatterns.size())];
    if (rng.uniform01() < 0.5)
        g[8] = 1;   // root_shell
    else
        g[12] = 1;  // is_host_login
    // Perturb a couple of free genes for variety.
    g[14] = static_cast<int>(rng.uniform_index(10));
    g[16] = static_cast<int>(rng.uniform_index(3));
    return g;
}

struct FileSpec {
    std::string name;
    std::size_t normals_per_pattern;
    std::size_t tail_normals;
    std::size_t stealthy_attacks;  // encode onto frequent normal patterns
    std::size_t distinct_attacks;
    bool anchors;
    bool allow_overrange;
};

std::size_t scaled(std::size_t n, double scale) {
    auto v = static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale));
    return v > 0 ? v : 1;
}

void write_file(const std::string& dir, const FileSpec& spec, Rng& rng) {
    RowContext ctx{&rng, spec.allow_overrange};
    std::vector<std::string> lines;

    if (spec.anchors) {
        lines.push_back(render_anchor(false, ctx));
        lines.push_back(render_anchor(true, ctx));
    }
    for (const auto& p : kNormalPatterns)
        for (std::size_t i = 0; i < spec.normals_per_pattern; ++i)
            lines.push_back(render_row(p, "normal", ctx));
    for (std::size_t i = 0; i < spec.tail_normals; ++i)
        lines.push_back(render_row(random_tail_pattern(rng), "normal", ctx));
    for (std::size_t i = 0; i < spec.stealthy_attacks; ++i) {
        const auto& p = kNormalPatterns[rng.uniform_index(kNormalPatterns.size())];
        lines.push_back(render_row(p, kStealthyAttacks[rng.uniform_index(5)], ctx));
    }
    for (std::size_t i = 0; i < spec.distinct_attacks; ++i)
        lines.push_back(
            render_row(distinct_attack_pattern(rng), kDistinctAttacks[rng.uniform_index(8)], ctx));

    // Fisher-Yates with the corpus stream keeps the layout deterministic.
    for (std::size_t i = lines.size(); i > 1; --i)
        std::swap(lines[i - 1], lines[rng.uniform_index(i)]);

    std::string path = dir + "/" + spec.name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& l : lines) out << l << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_corpus(const std::string& dir, std::uint64_t seed, double scale) {
    Rng rng(seed);
    // Class counts follow the public NSL-KDD release:
    //   KDDTrain+_20Percent: 13449 normal / 11743 attack
    //   KDDTrain+:           67343 normal / 58630 attack
    //   KDDTest+:             9711 normal / 12833 attack
    // About 45% of attacks collapse onto frequent normal patterns after
    // encoding, which reproduces the low attack-side separability regime.
    write_file(dir,
               FileSpec{"KDDTrain+_20Percent.txt", scaled(1076, scale), scaled(535, scale),
                        scaled(5284, scale), scaled(6459, scale), true, false},
               rng);
    write_file(dir,
               FileSpec{"KDDTrain+.txt", scaled(5382, scale), scaled(2757, scale),
                        scaled(26384, scale), scaled(32246, scale), true, false},
               rng);
    write_file(dir,
               FileSpec{"KDDTest+.txt", scaled(777, scale), scaled(387, scale),
                        scaled(5775, scale), scaled(7058, scale), false, true},
               rng);
}

}  // namespace detgen::synth
