// Command-line front end: `search` runs one pattern query against a text
// file and prints TSV; `bench` generates deterministic instances, cross-checks
// every strategy against the naive scan, and reports timings as CSV.

#include <cctype>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <kmwild/kmwild.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCrossCheck = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

// raw: file bytes minus one trailing newline. seq: FASTA-style, '>' header
// lines dropped, the rest concatenated with all whitespace removed.
std::string read_input(const std::string& path, const std::string& format) {
    std::string data = read_file(path);
    std::string out;
    if (format == "raw") {
        if (!data.empty() && data.back() == '\n') data.pop_back();
        if (!data.empty() && data.back() == '\r') data.pop_back();
        out = std::move(data);
    } else {
        std::istringstream lines(data);
        std::string line;
        while (std::getline(lines, line)) {
            if (!line.empty() && line.front() == '>') continue;
            for (char ch : line) {
                if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
            }
        }
    }
    if (out.empty()) throw InputError(path + ": no sequence data (" + format + " format)");
    return out;
}

kmwild::Strategy parse_strategy(const std::string& name) {
    if (name == "auto") return kmwild::Strategy::Auto;
    if (name == "islands") return kmwild::Strategy::Islands;
    if (name == "sections") return kmwild::Strategy::Sections;
    if (name == "naive") return kmwild::Strategy::Naive;
    throw InputError("unknown strategy: " + name);
}

// --- search -----------------------------------------------------------------

struct SearchConfig {
    std::string text_path;
    std::string format = "raw";
    std::string pattern;
    std::string pattern_file;
    std::int64_t k = 0;
    std::string wildcard = "?";
    std::string strategy = "auto";
    bool distances = false;
    int threads = 1;
};

int cmd_search(const SearchConfig& cfg) {
    const std::string text = read_input(cfg.text_path, cfg.format);
    std::string pattern = cfg.pattern;
    if (!cfg.pattern_file.empty()) pattern = read_input(cfg.pattern_file, "raw");
    if (pattern.empty()) throw InputError("empty pattern");
    if (cfg.wildcard.size() != 1) throw InputError("--wildcard takes a single character");

    kmwild::MatchQuery query;
    query.k = cfg.k;
    query.strategy = parse_strategy(cfg.strategy);
    query.threads = cfg.threads;
    query.with_distances = cfg.distances;
    query.wildcard = cfg.wildcard[0];

    const auto start = std::chrono::steady_clock::now();
    const kmwild::MatchReport report = kmwild::match_k_mismatches(text, pattern, query);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream out;
    for (std::size_t t = 0; t < report.positions.size(); ++t) {
        out << report.positions[t];
        if (cfg.distances) out << '\t' << report.distances[t];
        out << '\n';
    }
    std::cout << out.str();

    const kmwild::Diagnostics& d = report.diag;
    std::cerr << "n=" << d.n << " m=" << d.m << " q=" << d.q << " g=" << d.g
              << " strategy=" << kmwild::to_string(d.strategy)
              << " case=" << kmwild::to_string(d.path)
              << " selection=" << kmwild::to_string(d.selection_case) << " B=" << d.budget
              << " S=" << d.section_count << " candidates=" << d.candidate_count
              << " matches=" << report.positions.size() << " elapsed_ms=" << elapsed_ms << '\n';
    return kExitOk;
}

// --- bench ------------------------------------------------------------------

struct BenchConfig {
    std::uint64_t seed = 1;
    std::string grid;
    std::string out_path;
    bool inject_fault = false;
};

struct Grid {
    std::vector<std::int64_t> n{10000};
    std::vector<std::int64_t> m{100};
    std::vector<std::int64_t> k{4};
    std::vector<std::int64_t> sigma{4};
    std::vector<double> wild{0.1};
    std::int64_t reps = 1;
};

// Grid spec: "n=10000,100000;m=100;k=1,4;sigma=4;wild=0,0.2;reps=2"
Grid parse_grid(const std::string& spec) {
    Grid grid;
    std::istringstream fields(spec);
    std::string field;
    while (std::getline(fields, field, ';')) {
        if (field.empty()) continue;
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw InputError("bad grid field: " + field);
        const std::string key = field.substr(0, eq);
        std::vector<std::string> values;
        std::istringstream items(field.substr(eq + 1));
        std::string item;
        while (std::getline(items, item, ',')) values.push_back(item);
        if (values.empty()) throw InputError("bad grid field: " + field);

        try {
            auto as_ints = [&] {
                std::vector<std::int64_t> out;
                for (const auto& v : values) out.push_back(std::stoll(v));
                return out;
            };
            if (key == "n") grid.n = as_ints();
            else if (key == "m") grid.m = as_ints();
            else if (key == "k") grid.k = as_ints();
            else if (key == "sigma") grid.sigma = as_ints();
            else if (key == "reps") grid.reps = std::stoll(values.at(0));
            else if (key == "wild") {
                grid.wild.clear();
                for (const auto& v : values) grid.wild.push_back(std::stod(v));
            } else {
                throw InputError("unknown grid key: " + key);
            }
        } catch (const std::logic_error&) {
            throw InputError("bad grid value in field: " + field);
        }
    }
    if (grid.reps < 1) throw InputError("grid reps must be >= 1");
    return grid;
}

const std::string kBenchSymbols =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

struct BenchInstance {
    std::string text;
    std::string pattern;
};

BenchInstance make_instance(std::uint64_t seed, std::int64_t n, std::int64_t m,
                            std::int64_t k, std::int64_t sigma, double wild) {
    std::mt19937_64 rng(seed);
    const std::string symbols = kBenchSymbols.substr(0, static_cast<std::size_t>(sigma));
    BenchInstance inst;
    inst.text.resize(static_cast<std::size_t>(n));
    for (auto& ch : inst.text) ch = symbols[rng() % symbols.size()];

    // Pattern planted from a random window, degraded by wildcards and ~k flips.
    const std::int64_t start = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n - m + 1));
    inst.pattern = inst.text.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(m));
    for (auto& ch : inst.pattern) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < wild) ch = '?';
    }
    for (std::int64_t t = 0; t < k; ++t) {
        const std::size_t j = static_cast<std::size_t>(rng() % inst.pattern.size());
        if (inst.pattern[j] != '?') inst.pattern[j] = symbols[rng() % symbols.size()];
    }
    bool any_solid = false;
    for (char ch : inst.pattern) any_solid |= ch != '?';
    if (!any_solid) inst.pattern[0] = symbols[0];
    return inst;
}

int cmd_bench(const BenchConfig& cfg) {
    const Grid grid = parse_grid(cfg.grid);

    std::ofstream file_out;
    if (!cfg.out_path.empty()) {
        file_out.open(cfg.out_path, std::ios::binary);
        if (!file_out) throw InputError("cannot open " + cfg.out_path);
    }
    std::ostream& out = cfg.out_path.empty() ? std::cout : file_out;
    out << "n,m,k,q,sigma,strategy,case,elapsed_ms,marks,candidates\n";

    const kmwild::Strategy strategies[] = {kmwild::Strategy::Naive, kmwild::Strategy::Islands,
                                           kmwild::Strategy::Sections, kmwild::Strategy::Auto};
    std::uint64_t instance_index = 0;
    for (std::int64_t n : grid.n) {
        for (std::int64_t m : grid.m) {
            for (std::int64_t k : grid.k) {
                for (std::int64_t sigma : grid.sigma) {
                    for (double wild : grid.wild) {
                        for (std::int64_t rep = 0; rep < grid.reps; ++rep) {
                            ++instance_index;
                            if (m < 1 || m > n || k < 0 || sigma < 1 ||
                                sigma > static_cast<std::int64_t>(kBenchSymbols.size())) {
                                throw InputError("grid point out of range: n=" + std::to_string(n) +
                                                 " m=" + std::to_string(m) + " k=" + std::to_string(k) +
                                                 " sigma=" + std::to_string(sigma));
                            }
                            const std::uint64_t seed =
                                cfg.seed ^ (0x9E3779B97F4A7C15ULL * instance_index);
                            const BenchInstance inst = make_instance(seed, n, m, k, sigma, wild);

                            std::vector<kmwild::MatchReport> reports;
                            std::vector<double> timings;
                            for (kmwild::Strategy strategy : strategies) {
                                kmwild::MatchQuery query;
                                query.k = k;
                                query.strategy = strategy;
                                const auto start = std::chrono::steady_clock::now();
                                kmwild::MatchReport r =
                                    kmwild::match_k_mismatches(inst.text, inst.pattern, query);
                                timings.push_back(std::chrono::duration<double, std::milli>(
                                                      std::chrono::steady_clock::now() - start)
                                                      .count());
                                if (cfg.inject_fault && strategy == kmwild::Strategy::Sections) {
                                    // Test hook for the cross-check gate.
                                    if (!r.positions.empty()) r.positions.pop_back();
                                    else r.positions.push_back(0);
                                }
                                reports.push_back(std::move(r));
                            }

                            // Gate: no timing row for an instance unless every
                            // strategy agrees with the naive scan.
                            for (std::size_t s = 1; s < reports.size(); ++s) {
                                if (reports[s].positions != reports[0].positions) {
                                    std::cerr << "cross-check failure: strategy "
                                              << kmwild::to_string(strategies[s])
                                              << " disagrees with naive on seed=" << cfg.seed
                                              << " instance=" << instance_index << " n=" << n
                                              << " m=" << m << " k=" << k << " sigma=" << sigma
                                              << " wild=" << wild << '\n';
                                    return kExitCrossCheck;
                                }
                            }

                            for (std::size_t s = 0; s < reports.size(); ++s) {
                                const kmwild::Diagnostics& d = reports[s].diag;
                                out << n << ',' << m << ',' << k << ',' << d.q << ',' << sigma
                                    << ',' << kmwild::to_string(strategies[s]) << ','
                                    << kmwild::to_string(d.path) << ',' << timings[s] << ','
                                    << d.mark_total << ',' << d.candidate_count << '\n';
                            }
                        }
                    }
                }
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-mismatch pattern search with wildcards in the pattern"};
    app.require_subcommand(1);

    SearchConfig search;
    CLI::App* search_cmd = app.add_subcommand("search", "search a text file for a pattern");
    search_cmd->add_option("--text", search.text_path, "text file")->required();
    search_cmd->add_option("--format", search.format, "text file format")
        ->check(CLI::IsMember({"raw", "seq"}));
    auto* pattern_opt = search_cmd->add_option("--pattern", search.pattern, "pattern string");
    auto* pattern_file_opt =
        search_cmd->add_option("--pattern-file", search.pattern_file, "pattern file");
    pattern_opt->excludes(pattern_file_opt);
    search_cmd->add_option("-k,--k", search.k, "mismatch threshold")
        ->required()
        ->check(CLI::NonNegativeNumber);
    search_cmd->add_option("--wildcard", search.wildcard, "wildcard character (default '?')");
    search_cmd->add_option("--strategy", search.strategy, "verification strategy")
        ->check(CLI::IsMember({"auto", "islands", "sections", "naive"}));
    search_cmd->add_flag("--distances", search.distances, "print a distance column");
    search_cmd->add_option("--threads", search.threads, "worker threads")
        ->check(CLI::PositiveNumber);

    BenchConfig bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark strategies on random instances");
    bench_cmd->add_option("--seed", bench.seed, "master seed")->required();
    bench_cmd->add_option("--grid", bench.grid, "instance grid, e.g. n=10000;m=100;k=1,4")
        ->required();
    bench_cmd->add_option("--out", bench.out_path, "write CSV here instead of stdout");
    bench_cmd->add_flag("--inject-fault", bench.inject_fault)->group("");  // test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (search_cmd->parsed()) {
            if (search.pattern.empty() && search.pattern_file.empty()) {
                throw InputError("one of --pattern or --pattern-file is required");
            }
            return cmd_search(search);
        }
        return cmd_bench(bench);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
