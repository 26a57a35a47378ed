// Command-line front end: runs the experiments and emits reports.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "kolmo/report.hpp"

namespace fs = std::filesystem;
using namespace kolmo;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitCacheMismatch = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out_dir;
    std::string format = "doc";
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::string cache;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out-dir", c.out_dir, "directory for report files (stdout only if unset)");
    cmd->add_option("--format", c.format, "report format: doc or table")
        ->check(CLI::IsMember({"doc", "table"}));
    cmd->add_option("--workers", c.workers, "parallel workers for scans");
    cmd->add_option("--cache", c.cache, "complexity-table cache file");
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void render_table(std::ostream& os, const Json& j, const std::string& prefix = "") {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            std::string key = prefix.empty() ? k : prefix + "." + k;
            if (v.is_array() && !v.empty() && v.front().is_object()) {
                os << key << ":\n";
                std::vector<std::string> cols;
                for (const auto& [ck, cv] : v.front().items()) cols.push_back(ck);
                os << "  ";
                for (const auto& c : cols) os << c << "\t";
                os << "\n";
                for (const auto& row : v) {
                    os << "  ";
                    for (const auto& c : cols) os << row.value(c, Json()).dump() << "\t";
                    os << "\n";
                }
            } else if (v.is_object()) {
                render_table(os, v, key);
            } else {
                os << key << ": " << v.dump() << "\n";
            }
        }
    }
}

void emit_report(const Common& c, const std::string& command, Json parameters,
                 Json results, std::size_t cache_hits) {
    Json report{{"schema_version", kSchemaVersion},
                {"machine_version", std::string(kMachineVersion)},
                {"command", command},
                {"parameters", std::move(parameters)},
                {"results", std::move(results)},
                {"provenance",
                 Json{{"timestamp", timestamp_utc()},
                      {"workers", c.workers},
                      {"cache_hits", cache_hits}}}};
    std::ostringstream body;
    if (c.format == "doc") {
        body << report.dump(2) << "\n";
    } else {
        body << "command: " << command << "\n";
        render_table(body, report["parameters"], "param");
        render_table(body, report["results"]);
    }
    std::cout << body.str();
    if (!c.out_dir.empty()) {
        fs::create_directories(c.out_dir);
        std::string ext = c.format == "doc" ? ".json" : ".txt";
        std::ofstream f(fs::path(c.out_dir) / (command + ext), std::ios::binary);
        f << body.str();
    }
}

std::vector<std::uint64_t> require_ascending(std::vector<std::uint64_t> v,
                                             const char* field) {
    if (v.empty()) throw ConfigError(std::string(field) + ": at least one value required");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1])
            throw ConfigError(std::string(field) + ": values must be strictly ascending");
    return v;
}

// ---- ktable ----

struct KtableOpts {
    Common common;
    std::uint64_t max_program_bits = 18;
    std::vector<std::uint64_t> budgets{1000, 10000};
    std::string input;
    std::uint64_t output_cap = kDefaultOutputCap;
};

int run_ktable(const KtableOpts& o) {
    if (o.max_program_bits < 3) throw ConfigError("max-program-bits: must be >= 3");
    auto budgets = require_ascending(o.budgets, "budgets");
    BitVec input = o.input.empty() ? BitVec{} : bitvec_parse(o.input);

    KTable expect;
    expect.max_program_bits = o.max_program_bits;
    expect.budget = budgets.back();
    expect.output_cap = o.output_cap;
    expect.input = input;

    std::size_t cache_hits = 0;
    KTable table;
    bool loaded = false;
    if (!o.common.cache.empty() && fs::exists(o.common.cache)) {
        std::ifstream f(o.common.cache);
        table = ktable_read(f, expect);  // throws CacheMismatch on any drift
        loaded = true;
        cache_hits = 1;
    }
    if (!loaded) {
        auto sweep = budget_sweep(o.max_program_bits, budgets, input,
                                  o.common.workers, o.output_cap);
        table = sweep.back();
        if (!o.common.cache.empty()) {
            std::ofstream f(o.common.cache, std::ios::binary);
            ktable_write(f, table);
        }
    }
    Json params{{"max_program_bits", o.max_program_bits},
                {"budgets", budgets},
                {"input", o.input},
                {"output_cap", o.output_cap}};
    Json results{{"pigeonhole_ok", check_pigeonhole(table)},
                 {"table", to_json(table)}};
    emit_report(o.common, "ktable", std::move(params), std::move(results), cache_hits);
    return 0;
}

// ---- counting ----

struct CountingOpts {
    Common common;
    std::vector<std::uint64_t> ns{3};
    std::vector<std::uint64_t> ks{0};
};

int run_counting(const CountingOpts& o) {
    for (auto n : o.ns)
        if (n < 1) throw ConfigError("n: must be >= 1");
    Json rows = Json::array();
    for (auto n : o.ns)
        for (auto k : o.ks) rows.push_back(to_json(counting_formulas(n, k)));
    Json thresholds = Json::array();
    for (auto k : o.ks)
        thresholds.push_back(Json{{"k", k}, {"threshold_n", paradox_threshold(k)}});
    Json params{{"n", o.ns}, {"k", o.ks}};
    Json results{{"rows", std::move(rows)}, {"thresholds", std::move(thresholds)}};
    emit_report(o.common, "counting", std::move(params), std::move(results), 0);
    return 0;
}

// ---- paradox ----

struct ParadoxOpts {
    Common common;
    std::uint64_t n = 2;
    std::uint64_t verify_max = 4;
    std::uint64_t budget = 10000000;
};

int run_paradox(const ParadoxOpts& o) {
    if (o.n < 1) throw ConfigError("n: must be >= 1");
    auto rep = paradox_report(o.n);
    Json verification = Json::array();
    for (std::uint64_t n = 1; n <= std::min(o.n, o.verify_max); ++n) {
        auto acc = generator_program(n);
        auto out = run_program(acc.program, MachineConfig{o.budget, {}});
        bool ok = out.kind == RunKind::Halted && out.output == generate_list(n).concat;
        Json v{{"n", n},
               {"total_bits", acc.total_bits},
               {"halted", out.kind == RunKind::Halted},
               {"steps", out.steps_used},
               {"output_matches_list", ok}};
        if (out.output.size() <= 64) v["output"] = bitvec_str(out.output);
        verification.push_back(std::move(v));
    }
    Json params{{"n", o.n}, {"verify_max", o.verify_max}, {"budget", o.budget}};
    Json results{{"report", to_json(rep)},
                 {"generator_verification", std::move(verification)}};
    emit_report(o.common, "paradox", std::move(params), std::move(results), 0);
    return 0;
}

// ---- subadd ----

struct SubaddOpts {
    Common common;
    std::uint64_t n_x = 1, n_y = 1;
    std::uint64_t max_program_bits = 30;
    std::vector<std::uint64_t> budgets{128, 256};
    std::uint64_t chain_n = 1;
};

int run_subadd(const SubaddOpts& o) {
    if (o.n_x > 2 || o.n_y > 2)
        throw ConfigError("nx/ny: scopes above 2 are not searchable at desk scale");
    SearchBounds bounds{o.max_program_bits, require_ascending(o.budgets, "budgets"),
                        o.common.workers};
    auto rep = verify_subadditivity(o.n_x, o.n_y, bounds);
    Json results{{"subadditivity", to_json(rep)}};
    if (o.chain_n >= 1) {
        auto chain = recursive_list_bound(o.chain_n, bounds,
                                          std::max<std::int64_t>(rep.max_margin, 0));
        results["recursive_bound"] = to_json(chain);
    }
    Json params{{"n_x", o.n_x},
                {"n_y", o.n_y},
                {"max_program_bits", o.max_program_bits},
                {"budgets", bounds.budgets},
                {"chain_n", o.chain_n}};
    emit_report(o.common, "subadd", std::move(params), std::move(results), 0);
    return 0;
}

// ---- champernowne ----

struct ChampOpts {
    Common common;
    std::string variant = "all-strings";
    std::uint64_t n = 1000000;
    std::vector<std::uint64_t> block_sizes{1, 2, 3, 4};
    std::uint64_t entropy_block = 4;
    std::string export_bits;
};

int run_champernowne(const ChampOpts& o) {
    SequenceVariant variant;
    if (o.variant == "all-strings")
        variant = SequenceVariant::AllStrings;
    else if (o.variant == "counting")
        variant = SequenceVariant::Counting;
    else
        throw ConfigError("variant: must be all-strings or counting");
    if (o.n < 1) throw ConfigError("n: must be >= 1");
    for (auto b : o.block_sizes)
        if (b < 1 || b > 16 || b > o.n) throw ConfigError("block-sizes: need 1 <= b <= 16 and b <= n");

    SequenceSpec spec{variant, o.n};
    BitVec bits = sequence_prefix(spec);
    Json stats = Json::array();
    for (auto b : o.block_sizes) {
        auto st = block_stats_bits(bits, b);
        st.spec = spec;
        stats.push_back(to_json(st));
    }
    auto parse = dictionary_parse(bits);
    auto contrast = complexity_contrast(spec, o.entropy_block);
    Json results{{"stats", std::move(stats)},
                 {"compression",
                  Json{{"cost_bits", parse.cost_bits},
                       {"phrases", parse.phrases.size()},
                       {"ratio", {{"num", parse.ratio.num}, {"den", parse.ratio.den}}},
                       {"ratio_value", parse.ratio.to_double()}}},
                 {"contrast", to_json(contrast)}};
    if (!o.export_bits.empty()) {
        // packed raw bits, most significant bit of each byte first
        std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) bytes[i / 8] |= std::uint8_t(0x80 >> (i % 8));
        fs::path path = o.export_bits;
        if (!o.common.out_dir.empty() && path.is_relative()) {
            fs::create_directories(o.common.out_dir);
            path = fs::path(o.common.out_dir) / path;
        }
        std::ofstream f(path, std::ios::binary);
        f.write(reinterpret_cast<const char*>(bytes.data()),
                std::streamsize(bytes.size()));
    }
    Json params{{"variant", o.variant},
                {"n", o.n},
                {"block_sizes", o.block_sizes},
                {"entropy_block", o.entropy_block}};
    emit_report(o.common, "champernowne", std::move(params), std::move(results), 0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale algorithmic complexity laboratory (machine: " +
                 std::string(kMachineVersion) + ")"};
    app.require_subcommand(1);

    KtableOpts kt;
    auto* c_kt = app.add_subcommand("ktable", "build a complexity table with a budget sweep");
    add_common(c_kt, kt.common);
    c_kt->add_option("--max-program-bits", kt.max_program_bits);
    c_kt->add_option("--budgets", kt.budgets, "ascending step budgets");
    c_kt->add_option("--input", kt.input, "conditioning input bits");
    c_kt->add_option("--output-cap", kt.output_cap);

    CountingOpts co;
    auto* c_co = app.add_subcommand("counting", "exact counting formulas and thresholds");
    add_common(c_co, co.common);
    c_co->add_option("--n", co.ns);
    c_co->add_option("--k", co.ks);

    ParadoxOpts pa;
    auto* c_pa = app.add_subcommand("paradox", "paradox report with generator verification");
    add_common(c_pa, pa.common);
    c_pa->add_option("--n", pa.n);
    c_pa->add_option("--verify-max", pa.verify_max);
    c_pa->add_option("--budget", pa.budget);

    SubaddOpts su;
    auto* c_su = app.add_subcommand("subadd", "subadditivity verification");
    add_common(c_su, su.common);
    c_su->add_option("--nx", su.n_x);
    c_su->add_option("--ny", su.n_y);
    c_su->add_option("--max-program-bits", su.max_program_bits);
    c_su->add_option("--budgets", su.budgets);
    c_su->add_option("--chain-n", su.chain_n);

    ChampOpts ch;
    auto* c_ch = app.add_subcommand("champernowne", "normality statistics and the contrast");
    add_common(c_ch, ch.common);
    c_ch->add_option("--variant", ch.variant);
    c_ch->add_option("--n", ch.n);
    c_ch->add_option("--block-sizes", ch.block_sizes);
    c_ch->add_option("--entropy-block", ch.entropy_block);
    c_ch->add_option("--export-bits", ch.export_bits);

    try {
        app.parse(argc, argv);
        if (c_kt->parsed()) return run_ktable(kt);
        if (c_co->parsed()) return run_counting(co);
        if (c_pa->parsed()) return run_paradox(pa);
        if (c_su->parsed()) return run_subadd(su);
        if (c_ch->parsed()) return run_champernowne(ch);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IncompleteTable& e) {
        std::cerr << "incomplete table: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const CacheMismatch& e) {
        std::cerr << e.what() << "\n";
        return kExitCacheMismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
