#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kolmo/machine.hpp"

// Tiny assembly format for hand-written machine programs: one mnemonic per
// line (L R F O I [ ] E), ';' starts a comment, '%N%' marks the splice point
// for a parameter's digit blocks.

namespace kolmo {

struct AsmListing {
    std::vector<Op> before_splice;
    std::vector<Op> after_splice;
    bool has_splice = false;
};

inline AsmListing parse_listing(std::string_view text) {
    AsmListing l;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (auto c = line.find(';'); c != std::string_view::npos) line = line.substr(0, c);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r' ||
                                 line.back() == '\t'))
            line.remove_suffix(1);
        if (line.empty()) continue;
        if (line == "%N%") {
            if (l.has_splice) throw std::invalid_argument("duplicate %N% marker");
            l.has_splice = true;
            continue;
        }
        if (line.size() != 1) throw std::invalid_argument("bad listing line: " + std::string(line));
        auto& dst = l.has_splice ? l.after_splice : l.before_splice;
        switch (line[0]) {
            case 'L': dst.push_back(Op::MoveLeft); break;
            case 'R': dst.push_back(Op::MoveRight); break;
            case 'F': dst.push_back(Op::Flip); break;
            case 'O': dst.push_back(Op::Output); break;
            case 'I': dst.push_back(Op::Input); break;
            case '[': dst.push_back(Op::LoopOpen); break;
            case ']': dst.push_back(Op::LoopClose); break;
            case 'E': dst.push_back(Op::End); break;
            default: throw std::invalid_argument("bad mnemonic: " + std::string(line));
        }
    }
    return l;
}

inline Program assemble(const AsmListing& l, const std::vector<Op>& splice = {}) {
    std::vector<Op> ops = l.before_splice;
    ops.insert(ops.end(), splice.begin(), splice.end());
    ops.insert(ops.end(), l.after_splice.begin(), l.after_splice.end());
    auto r = Program::from_ops(std::move(ops));
    if (auto* p = std::get_if<Program>(&r)) return *p;
    throw std::invalid_argument(std::string("assemble: invalid program: ") +
                                std::string(decode_error_name(std::get<DecodeError>(r))));
}

}  // namespace kolmo
