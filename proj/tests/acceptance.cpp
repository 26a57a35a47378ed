// Acceptance gate: one line per criterion, nonzero exit on any failure.
// argv[1] = path to the command-line binary (used by the reproducibility
// criterion); everything else runs in-process.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <sys/wait.h>

#include "kolmo/champernowne.hpp"
#include "kolmo/joint.hpp"
#include "kolmo/ktable.hpp"
#include "kolmo/report.hpp"

namespace fs = std::filesystem;
using namespace kolmo;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void verdict(int idx, const char* what, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << idx << ": " << what
              << std::endl;
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string g_cli;

/// Run the CLI, capture stdout, return (exit code, output).
std::pair<int, std::string> run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    int code = (st >= 0 && WIFEXITED(st)) ? WEXITSTATUS(st) : -1;
    return {code, out};
}

bool criterion1_counts() {
    auto t0 = Clock::now();
    for (std::uint64_t n = 1; n <= 16; ++n) {
        if (BigInt(generate_list(n).items.size()) != list_count(n)) return false;
        auto r = counting_formulas(n, 0);
        if (r.strings_in_list != list_count(n)) return false;
    }
    auto r = counting_formulas(100, 10);
    if (r.strings_in_list != (BigInt(1) << 101) - 2) return false;
    if (r.programs_bound != (BigInt(1) << 18) - 2) return false;
    if (r.deficit != r.strings_in_list - r.programs_bound) return false;
    return seconds_since(t0) < 1.0;
}

bool criterion2_pigeonhole() {
    auto t0 = Clock::now();
    auto sweep = budget_sweep(18, {1000, 10000});
    for (const auto& t : sweep)
        if (!check_pigeonhole(t)) return false;
    return seconds_since(t0) < 120.0;
}

bool criterion3_small_table_stability() {
    auto serialize = [](const KTable& t) {
        std::ostringstream os;
        ktable_write(os, t);
        return os.str();
    };
    auto a = build_ktable(12, 1000, {}, 1);
    auto b = build_ktable(12, 100000, {}, 1);
    auto c = build_ktable(12, 1000, {}, 4);
    auto bits = [&](const KTable& t, const char* key) -> std::int64_t {
        const KEntry* e = t.find(Bits64::parse(key));
        return e ? std::int64_t(e->min_bits) : -1;
    };
    for (const auto* t : {&a, &b, &c}) {
        if (bits(*t, "") != 3) return false;
        if (bits(*t, "0") != 6) return false;
        if (bits(*t, "1") != 9) return false;
    }
    if (serialize(a) != serialize(c)) return false;  // worker count is invisible
    // larger budget at this size changes nothing either
    auto sa = serialize(a), sb = serialize(b);
    sa = sa.substr(sa.find("entries"));
    sb = sb.substr(sb.find("entries"));
    return sa == sb;
}

bool criterion4_generator() {
    for (std::uint64_t n = 1; n <= 8; ++n) {
        auto acc = generator_program(n);
        if (acc.total_bits != acc.k_gen + acc.c_per_bit * bits_of(n)) return false;
    }
    Vm vm;
    for (std::uint64_t n = 1; n <= 4; ++n) {
        auto acc = generator_program(n);
        auto out = vm.run(acc.program, MachineConfig{10'000'000, {}});
        if (out.kind != RunKind::Halted) return false;
        if (out.output != generate_list(n).concat) return false;
    }
    // the count of certified-hard strings flips from zero to positive exactly
    // where N first exceeds the generator's own length
    for (std::uint64_t n = 500; n <= 600; ++n) {
        auto r = paradox_report(n);
        bool positive = r.guaranteed_high_complexity_count > 0;
        if (positive != (n > generator_bits(n))) return false;
    }
    return true;
}

bool criterion5_selectors() {
    auto t0 = Clock::now();
    Vm vm;
    for (std::uint64_t n = 1; n <= 6; ++n) {
        std::uint64_t count = std::uint64_t(list_count(n));
        for (std::uint64_t j = 1; j <= count; ++j) {
            BitVec s = list_item(n, j);
            Program sel = selector_program(n, j);
            auto out = vm.run(sel, MachineConfig{1000, {}});
            if (out.kind != RunKind::Halted || out.output != s) return false;
            if (sel.bit_length() < 3 * s.size() + kSelectorTemplateBits) return false;
        }
    }
    return seconds_since(t0) < 10.0;
}

bool criterion6_subadditivity() {
    SearchBounds base;  // 30 bits, budgets {128, 256}
    auto rep = verify_subadditivity(1, 1, base);
    for (const auto& row : rep.rows)
        if (!row.converged) return false;

    SearchBounds deeper_budget = base;
    deeper_budget.budgets = {256, 512};
    if (verify_subadditivity(1, 1, deeper_budget).max_margin != rep.max_margin)
        return false;

    SearchBounds deeper_search = base;
    deeper_search.max_program_bits = 33;
    if (verify_subadditivity(1, 1, deeper_search).max_margin != rep.max_margin)
        return false;
    return true;
}

bool criterion7_contrast() {
    SequenceSpec spec{SequenceVariant::AllStrings, 1'000'000};
    BitVec bits = sequence_prefix(spec);
    for (std::uint64_t b : {std::uint64_t(1), std::uint64_t(2), std::uint64_t(3)}) {
        auto st = block_stats_bits(bits, b);
        if (!(st.discrepancy < Rational::make(1, 20))) return false;  // exact
    }
    if (block_stats_bits(bits, 4).entropy_rate < 0.95) return false;
    auto parse = dictionary_parse(bits);
    if (__int128(parse.ratio.num) * 2 < __int128(parse.ratio.den)) return false;
    auto contrast = complexity_contrast(spec);
    if (contrast.description_bits > 400) return false;
    if (!contrast.contrast_claimed || contrast.gap < 1000.0) return false;
    return true;
}

bool criterion8_decoder() {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        std::uniform_int_distribution<std::size_t> len(1, 10'000);
        BitVec bits(len(rng));
        for (auto& b : bits) b = rng() & 1;
        if (dictionary_decode(dictionary_parse(bits).phrases) != bits) return false;
    }
    std::vector<BitVec> structured{
        BitVec(1, 0),         BitVec(1, 1),         BitVec(10'000, 0),
        BitVec(10'000, 1),    generate_list(9).concat,
        sequence_prefix({SequenceVariant::Counting, 10'000}),
    };
    for (std::size_t i = 0; i < 4; ++i) {  // periodic patterns
        BitVec v(10'000);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = (j >> i) & 1;
        structured.push_back(std::move(v));
    }
    for (const auto& bits : structured)
        if (dictionary_decode(dictionary_parse(bits).phrases) != bits) return false;
    return true;
}

bool criterion9_cli() {
    auto results_of = [](const std::string& body) -> Json {
        auto j = Json::parse(body, nullptr, false);
        if (j.is_discarded()) return Json();
        return j.value("results", Json());
    };
    auto same_twice = [&](const std::string& args) {
        auto a = run_cli(args);
        auto b = run_cli(args);
        if (a.first != 0 || b.first != 0) return false;
        Json ra = results_of(a.second), rb = results_of(b.second);
        return !ra.is_null() && ra == rb;
    };
    if (!same_twice("counting --n 3 10 100 --k 0 5 10")) return false;
    if (!same_twice("paradox --n 3")) return false;
    if (!same_twice("champernowne --n 5000 --block-sizes 1 2 3")) return false;
    if (!same_twice("subadd --nx 0 --ny 0 --max-program-bits 12 --chain-n 1")) return false;

    fs::path dir = fs::temp_directory_path() / "kolmo-acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string cache = (dir / "table.cache").string();
    std::string kt = "ktable --max-program-bits 15 --budgets 100 1000 --cache " + cache;
    auto first = run_cli(kt);
    auto second = run_cli(kt);
    if (first.first != 0 || second.first != 0) return false;
    auto ja = Json::parse(first.second, nullptr, false);
    auto jb = Json::parse(second.second, nullptr, false);
    if (ja.is_discarded() || jb.is_discarded()) return false;
    if (ja["provenance"]["cache_hits"] != 0) return false;
    if (jb["provenance"]["cache_hits"] != 1) return false;  // reused, not rebuilt
    if (ja["results"] != jb["results"]) return false;

    // drifted parameters must refuse the cache, not silently reuse it
    auto drift = run_cli("ktable --max-program-bits 15 --budgets 100 2000 --cache " + cache);
    if (drift.first != 4) return false;
    // malformed configuration is a config error
    auto bad = run_cli("counting --n 0");
    if (bad.first != 2) return false;
    auto badfmt = run_cli("counting --format yaml");
    if (badfmt.first != 2) return false;
    fs::remove_all(dir);
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli>\n";
        return 2;
    }
    g_cli = argv[1];

    verdict(1, "exact list and program counts at small and large N", criterion1_counts());
    verdict(2, "pigeonhole holds across the full table sweep", criterion2_pigeonhole());
    verdict(3, "minimal complexities stable under budget and worker count",
            criterion3_small_table_stability());
    verdict(4, "generator length identity, execution, and threshold", criterion4_generator());
    verdict(5, "selectors reproduce their item and embed its length", criterion5_selectors());
    verdict(6, "subadditivity margin stable under deeper search", criterion6_subadditivity());
    verdict(7, "statistically random prefix with a logarithmic description",
            criterion7_contrast());
    verdict(8, "dictionary decoder inverts the parse", criterion8_decoder());
    verdict(9, "command-line runs reproducible; cache and errors honored",
            criterion9_cli());

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all 9 criteria passed" << std::endl;
    return 0;
}
