#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kolmo/enumerate.hpp"
#include "kolmo/machine.hpp"

using namespace kolmo;

namespace {

Program prog(std::initializer_list<Op> ops) {
    return std::get<Program>(Program::from_ops(std::vector<Op>(ops)));
}

ExecOutcome run(const Program& p, const std::string& input, std::uint64_t budget) {
    return run_program(p, MachineConfig{budget, bitvec_parse(input)});
}

// Random valid program: random body with brackets forced to balance.
Program random_program(std::mt19937_64& rng, std::size_t max_body) {
    std::uniform_int_distribution<std::size_t> len(0, max_body);
    std::uniform_int_distribution<int> pick(0, 6);
    std::vector<Op> ops;
    std::size_t m = len(rng);
    int open = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Op op = detail::kBodyOps[std::size_t(pick(rng))];
        if (op == Op::LoopClose && open == 0) op = Op::Flip;
        if (op == Op::LoopOpen && std::size_t(open) + 1 > m - i - 1) op = Op::Output;
        if (op == Op::LoopOpen) ++open;
        if (op == Op::LoopClose) --open;
        ops.push_back(op);
    }
    while (open-- > 0) ops.push_back(Op::LoopClose);
    ops.push_back(Op::End);
    return std::get<Program>(Program::from_ops(std::move(ops)));
}

}  // namespace

TEST_CASE("decode forced programs") {
    auto p1 = Program::decode(bitvec_parse("111"));
    REQUIRE(std::get<Program>(p1).ops() == std::vector<Op>{Op::End});
    REQUIRE(std::get<Program>(p1).bit_length() == 3);

    auto p2 = Program::decode(bitvec_parse("011111"));
    REQUIRE(std::get<Program>(p2).ops() == std::vector<Op>{Op::Output, Op::End});
    REQUIRE(std::get<Program>(p2).bit_length() == 6);
}

TEST_CASE("decode errors") {
    REQUIRE(std::get<DecodeError>(Program::decode(bitvec_parse("101111"))) ==
            DecodeError::UnbalancedLoops);
    REQUIRE(std::get<DecodeError>(Program::decode(bitvec_parse("1111"))) ==
            DecodeError::NotMultipleOfThree);
    REQUIRE(std::get<DecodeError>(Program::decode(bitvec_parse("011"))) ==
            DecodeError::NoTerminalEnd);
    // End in the middle
    REQUIRE(std::get<DecodeError>(Program::decode(bitvec_parse("111111"))) ==
            DecodeError::NoTerminalEnd);
}

TEST_CASE("basic runs") {
    auto out = run(prog({Op::Output, Op::End}), "", 10);
    REQUIRE(out.kind == RunKind::Halted);
    REQUIRE(bitvec_str(out.output) == "0");
    REQUIRE(out.steps_used == 2);

    out = run(prog({Op::Flip, Op::Output, Op::End}), "", 10);
    REQUIRE(out.kind == RunKind::Halted);
    REQUIRE(bitvec_str(out.output) == "1");

    out = run(prog({Op::Flip, Op::LoopOpen, Op::LoopClose, Op::End}), "", 100);
    REQUIRE(out.kind == RunKind::BudgetExceeded);
    REQUIRE(out.steps_used == 100);

    out = run(prog({Op::Input, Op::Output, Op::End}), "1", 10);
    REQUIRE(out.kind == RunKind::Halted);
    REQUIRE(bitvec_str(out.output) == "1");

    out = run(prog({Op::Input, Op::Output, Op::End}), "", 10);
    REQUIRE(out.kind == RunKind::InputExhausted);
    REQUIRE(out.output.empty());
}

TEST_CASE("program bit length") {
    REQUIRE(prog({Op::End}).bit_length() == 3);
    REQUIRE(prog({Op::Output, Op::End}).bit_length() == 6);
    REQUIRE(prog({Op::Flip, Op::Output, Op::Flip, Op::Output, Op::End}).bit_length() == 15);
}

TEST_CASE("tape moves both ways") {
    // L F O R R F O: output the cell left of the origin, then one right of it
    auto out = run(prog({Op::MoveLeft, Op::Flip, Op::Output, Op::MoveRight,
                         Op::MoveRight, Op::Output, Op::End}),
                   "", 100);
    REQUIRE(out.kind == RunKind::Halted);
    REQUIRE(bitvec_str(out.output) == "10");
}

TEST_CASE("determinism, budget monotonicity, output bound") {
    std::mt19937_64 rng(7);
    Vm vm;
    for (int i = 0; i < 2000; ++i) {
        Program p = random_program(rng, 8);
        MachineConfig cfg{300, i % 2 ? bitvec_parse("101") : BitVec{}};
        auto a = vm.run(p, cfg);
        auto b = run_program(p, cfg);  // fresh Vm
        REQUIRE(a.kind == b.kind);
        REQUIRE(a.output == b.output);
        REQUIRE(a.steps_used == b.steps_used);
        REQUIRE(a.steps_used <= cfg.step_budget);
        if (a.kind == RunKind::Halted) {
            REQUIRE(a.output.size() <= a.steps_used);
            // a larger budget changes nothing
            auto c = vm.run(p, MachineConfig{cfg.step_budget * 4, cfg.input});
            REQUIRE(c.kind == RunKind::Halted);
            REQUIRE(c.output == a.output);
            REQUIRE(c.steps_used == a.steps_used);
        }
    }
}

TEST_CASE("encode/decode round trip") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        Program p = random_program(rng, 12);
        auto q = Program::decode(p.encode());
        REQUIRE(std::get<Program>(q) == p);
    }
}

TEST_CASE("output cap reports overflow without changing the outcome") {
    Vm vm;
    auto p = prog({Op::Output, Op::Output, Op::Output, Op::End});
    auto out = vm.run(CompiledProgram::compile(p), MachineConfig{10, {}}, 2);
    REQUIRE(out.kind == RunKind::Halted);
    REQUIRE(vm.output_overflow());
    REQUIRE(out.steps_used == 4);
}
