#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "kolmo/champernowne.hpp"
#include "kolmo/counting.hpp"
#include "kolmo/joint.hpp"
#include "kolmo/ktable.hpp"
#include "kolmo/paradox.hpp"

// JSON views of every module's result types. Field names are fixed by
// docs/report_schema.json; insertion order is kept so reruns are
// byte-identical.

namespace kolmo {

using Json = nlohmann::ordered_json;

inline std::string big_str(const BigInt& v) { return v.str(); }

inline Json to_json(const CountReport& r) {
    return Json{{"n", r.n},
                {"k", r.k},
                {"strings_in_list", big_str(r.strings_in_list)},
                {"programs_bound", big_str(r.programs_bound)},
                {"deficit", big_str(r.deficit)}};
}

inline Json to_json(const KTable& t) {
    Json entries = Json::array();
    for (const auto& [key, e] : t.entries) {
        entries.push_back(Json{{"output", key.str()},
                               {"min_bits", e.min_bits},
                               {"witness", witness_program(e).mnemonics()},
                               {"steps", e.steps},
                               {"converged", e.converged}});
    }
    return Json{{"machine_version", t.machine_version},
                {"max_program_bits", t.max_program_bits},
                {"budget", t.budget},
                {"output_cap", t.output_cap},
                {"input", bitvec_str(t.input)},
                {"entry_count", t.entries.size()},
                {"entries", std::move(entries)}};
}

inline Json to_json(const GeneratorAccount& a) {
    return Json{{"n", a.n},
                {"total_bits", a.total_bits},
                {"k_gen", a.k_gen},
                {"c_per_bit", a.c_per_bit},
                {"n_bits", a.n_bits}};
}

inline Json to_json(const ParadoxReport& r) {
    Json sels = Json::array();
    for (const auto& s : r.selector_examples)
        sels.push_back(Json{{"j", s.j}, {"item", s.item}, {"selector_bits", s.selector_bits}});
    return Json{{"n", r.n},
                {"k_gen", r.k_gen},
                {"c_per_bit", r.c_per_bit},
                {"generator_bits", r.generator_bits},
                {"strings_in_list", big_str(r.strings_in_list)},
                {"programs_bound", big_str(r.programs_bound)},
                {"guaranteed_high_complexity_count",
                 big_str(r.guaranteed_high_complexity_count)},
                {"selector_examples", std::move(sels)}};
}

inline Json to_json(const SubadditivityReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"x", row.x},
                            {"y", row.y},
                            {"k_pair", row.k_pair},
                            {"k_x", row.k_x},
                            {"k_y_given_x", row.k_y_given_x},
                            {"margin", row.margin},
                            {"converged", row.converged}});
    return Json{{"n_x", r.n_x},
                {"n_y", r.n_y},
                {"max_program_bits", r.bounds.max_program_bits},
                {"budgets", r.bounds.budgets},
                {"rows", std::move(rows)},
                {"max_margin", r.max_margin}};
}

inline Json to_json(const RecursiveBoundReport& r) {
    Json terms = Json::array();
    for (const auto& t : r.terms)
        terms.push_back(Json{{"item", t.item}, {"k_cond", t.k_cond}});
    Json j{{"n", r.n},
           {"terms", std::move(terms)},
           {"pairing_overhead", r.pairing_overhead},
           {"chain_bound", r.chain_bound},
           {"generator_bound", r.generator_bound}};
    if (r.k_concat)
        j["k_concat"] = *r.k_concat;
    else
        j["k_concat"] = nullptr;
    return j;
}

inline Json to_json(const BlockStats& st) {
    return Json{{"variant", std::string(sequence_variant_name(st.spec.variant))},
                {"n", st.spec.n},
                {"block_size", st.block_size},
                {"windows", st.windows},
                {"counts", st.counts},
                {"discrepancy", {{"num", st.discrepancy.num}, {"den", st.discrepancy.den}}},
                {"discrepancy_value", st.discrepancy.to_double()},
                {"entropy_rate", st.entropy_rate}};
}

inline Json to_json(const ContrastReport& r) {
    return Json{{"variant", std::string(sequence_variant_name(r.spec.variant))},
                {"n", r.spec.n},
                {"description_bits", r.description_bits},
                {"compressed_bits", r.compressed_bits},
                {"entropy_bits", r.entropy_bits},
                {"entropy_block_size", r.entropy_block_size},
                {"contrast_claimed", r.contrast_claimed},
                {"gap", r.gap}};
}

}  // namespace kolmo
