#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kolmo/bitstring.hpp"

// The reference machine: bit cells on a two-way-infinite tape, a read-only
// input bit stream, a write-only output bit stream, and eight opcodes encoded
// in three bits each. All complexities measured by this project are relative
// to this machine ("bitvm-v1").

namespace kolmo {

enum class Op : std::uint8_t {
    MoveLeft = 0,   // 000 L
    MoveRight = 1,  // 001 R
    Flip = 2,       // 010 F
    Output = 3,     // 011 O
    Input = 4,      // 100 I
    LoopOpen = 5,   // 101 [
    LoopClose = 6,  // 110 ]
    End = 7,        // 111 E
};

inline constexpr char kOpMnemonic[8] = {'L', 'R', 'F', 'O', 'I', '[', ']', 'E'};
inline constexpr std::string_view kMachineVersion = "bitvm-v1";
inline constexpr std::string_view kOpcodeTable =
    "000=L,001=R,010=F,011=O,100=I,101=[,110=],111=E";

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t opcode_table_hash() { return fnv1a(kOpcodeTable); }

enum class DecodeError {
    NotMultipleOfThree,
    NoTerminalEnd,
    UnbalancedLoops,
};

inline std::string_view decode_error_name(DecodeError e) {
    switch (e) {
        case DecodeError::NotMultipleOfThree: return "NotMultipleOfThree";
        case DecodeError::NoTerminalEnd: return "NoTerminalEnd";
        case DecodeError::UnbalancedLoops: return "UnbalancedLoops";
    }
    return "?";
}

/// A validated program: opcode sequence ending in a single End, loops
/// balanced. bit_length is 3 bits per opcode including the End.
class Program {
public:
    static std::variant<Program, DecodeError> decode(const BitVec& bits) {
        if (bits.size() % 3 != 0 || bits.empty())
            return DecodeError::NotMultipleOfThree;
        std::vector<Op> ops;
        ops.reserve(bits.size() / 3);
        for (std::size_t i = 0; i < bits.size(); i += 3) {
            auto code = std::uint8_t(bits[i] << 2 | bits[i + 1] << 1 | bits[i + 2]);
            ops.push_back(Op(code));
        }
        return from_ops(std::move(ops));
    }

    static std::variant<Program, DecodeError> from_ops(std::vector<Op> ops) {
        if (ops.empty() || ops.back() != Op::End) return DecodeError::NoTerminalEnd;
        for (std::size_t i = 0; i + 1 < ops.size(); ++i)
            if (ops[i] == Op::End) return DecodeError::NoTerminalEnd;
        int depth = 0;
        for (Op op : ops) {
            if (op == Op::LoopOpen) ++depth;
            if (op == Op::LoopClose && --depth < 0) return DecodeError::UnbalancedLoops;
        }
        if (depth != 0) return DecodeError::UnbalancedLoops;
        Program p;
        p.ops_ = std::move(ops);
        return p;
    }

    const std::vector<Op>& ops() const { return ops_; }
    std::size_t bit_length() const { return 3 * ops_.size(); }

    BitVec encode() const {
        BitVec bits;
        bits.reserve(bit_length());
        for (Op op : ops_) {
            auto c = std::uint8_t(op);
            bits.push_back((c >> 2) & 1);
            bits.push_back((c >> 1) & 1);
            bits.push_back(c & 1);
        }
        return bits;
    }

    /// Numeric value of the encoding, MSB first. Programs compared for
    /// canonical tie-breaks by (bit_length, this value). Only defined for
    /// programs of at most 21 opcodes (63 bits).
    std::uint64_t encoding_value() const {
        if (bit_length() > 63) throw std::length_error("encoding_value: program too long");
        std::uint64_t v = 0;
        for (Op op : ops_) v = (v << 3) | std::uint64_t(op);
        return v;
    }

    std::string mnemonics() const {
        std::string s;
        s.reserve(ops_.size());
        for (Op op : ops_) s.push_back(kOpMnemonic[std::size_t(op)]);
        return s;
    }

    friend bool operator==(const Program& a, const Program& b) { return a.ops_ == b.ops_; }

private:
    Program() = default;
    std::vector<Op> ops_;
};

struct MachineConfig {
    std::uint64_t step_budget = 1;  // executed opcodes, End and taken jumps included
    BitVec input;                   // conditioning string; empty for plain complexity
};

enum class RunKind { Halted, BudgetExceeded, InputExhausted };

inline std::string_view run_kind_name(RunKind k) {
    switch (k) {
        case RunKind::Halted: return "Halted";
        case RunKind::BudgetExceeded: return "BudgetExceeded";
        case RunKind::InputExhausted: return "InputExhausted";
    }
    return "?";
}

struct ExecOutcome {
    RunKind kind = RunKind::BudgetExceeded;
    BitVec output;  // meaningful only when kind == Halted
    std::uint64_t steps_used = 0;
};

/// Precompiled form: jump targets resolved, so the interpreter loop is a
/// flat dispatch with no bracket matching at run time.
struct CompiledProgram {
    struct Instr {
        Op op;
        std::uint32_t jump = 0;  // LoopOpen: index past match; LoopClose: index past match
    };
    std::vector<Instr> code;

    static CompiledProgram compile(const Program& p) {
        CompiledProgram cp;
        cp.code.reserve(p.ops().size());
        std::vector<std::uint32_t> stack;
        for (Op op : p.ops()) {
            cp.code.push_back({op, 0});
            auto here = std::uint32_t(cp.code.size() - 1);
            if (op == Op::LoopOpen) {
                stack.push_back(here);
            } else if (op == Op::LoopClose) {
                auto open = stack.back();
                stack.pop_back();
                cp.code[open].jump = here + 1;
                cp.code[here].jump = open + 1;
            }
        }
        return cp;
    }
};

/// Interpreter with a reusable tape buffer. run() is a pure function of
/// (program, config); the buffer is an allocation cache only.
class Vm {
public:
    /// output_cap: if set, output longer than the cap aborts collection; the
    /// run still continues to its real outcome and output_overflow() reports
    /// the truncation. Searches use this to bound memory per the table cap.
    ExecOutcome run(const CompiledProgram& cp, const MachineConfig& cfg,
                    std::optional<std::size_t> output_cap = std::nullopt) {
        ensure_tape(cfg.step_budget);
        const std::int64_t origin = std::int64_t(tape_.size() / 2);
        std::int64_t head = origin;
        std::int64_t lo = origin, hi = origin;
        std::size_t in_pos = 0;
        std::uint64_t steps = 0;
        output_.clear();
        output_overflow_ = false;

        ExecOutcome out;
        std::uint32_t pc = 0;
        for (;;) {
            if (steps == cfg.step_budget) {
                out.kind = RunKind::BudgetExceeded;
                break;
            }
            const auto& ins = cp.code[pc];
            ++steps;
            switch (ins.op) {
                case Op::MoveLeft:
                    --head;
                    if (head < lo) lo = head;
                    ++pc;
                    break;
                case Op::MoveRight:
                    ++head;
                    if (head > hi) hi = head;
                    ++pc;
                    break;
                case Op::Flip:
                    tape_[std::size_t(head)] ^= 1;
                    ++pc;
                    break;
                case Op::Output:
                    if (output_cap && output_.size() >= *output_cap) {
                        output_overflow_ = true;
                    } else {
                        output_.push_back(tape_[std::size_t(head)]);
                    }
                    ++pc;
                    break;
                case Op::Input:
                    if (in_pos >= cfg.input.size()) {
                        out.kind = RunKind::InputExhausted;
                        out.steps_used = steps;
                        clear_touched(lo, hi);
                        return out;
                    }
                    tape_[std::size_t(head)] = cfg.input[in_pos++];
                    ++pc;
                    break;
                case Op::LoopOpen:
                    pc = tape_[std::size_t(head)] ? pc + 1 : ins.jump;
                    break;
                case Op::LoopClose:
                    pc = tape_[std::size_t(head)] ? ins.jump : pc + 1;
                    break;
                case Op::End:
                    out.kind = RunKind::Halted;
                    out.output = output_;
                    out.steps_used = steps;
                    clear_touched(lo, hi);
                    return out;
            }
        }
        out.steps_used = steps;
        clear_touched(lo, hi);
        return out;
    }

    ExecOutcome run(const Program& p, const MachineConfig& cfg,
                    std::optional<std::size_t> output_cap = std::nullopt) {
        return run(CompiledProgram::compile(p), cfg, output_cap);
    }

    bool output_overflow() const { return output_overflow_; }

private:
    void ensure_tape(std::uint64_t budget) {
        // The head moves at most one cell per step, so budget bounds the span.
        std::size_t need = 2 * std::size_t(budget) + 3;
        if (tape_.size() < need) tape_.assign(need, 0);
    }
    void clear_touched(std::int64_t lo, std::int64_t hi) {
        std::fill(tape_.begin() + lo, tape_.begin() + hi + 1, std::uint8_t(0));
    }

    std::vector<std::uint8_t> tape_;
    BitVec output_;
    bool output_overflow_ = false;
};

inline ExecOutcome run_program(const Program& p, const MachineConfig& cfg) {
    Vm vm;
    return vm.run(p, cfg);
}

inline std::size_t program_bit_length(const Program& p) { return p.bit_length(); }

}  // namespace kolmo
