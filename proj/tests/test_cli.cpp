#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfcat/problemfile.hpp"

using namespace mfcat;

TEST_CASE("ext assertion passes with exit 0") {
    std::string text = R"(
ring x
let M = koszul [x] [x]
assert curving M == x^2
assert ext M M == (1, 1)
cmd ranks M
)";
    RunResult rr = run_problem_text(text, 1);
    INFO(rr.text_report());
    CHECK(rr.exit_code == 0);
}

TEST_CASE("falsifiable assertion exits 3") {
    std::string text = R"(
ring x
let M = koszul [x] [x]
assert ext M M == (9, 9)
)";
    RunResult rr = run_problem_text(text, 1);
    CHECK(rr.exit_code == 3);
}

TEST_CASE("syntax errors exit 2 with position information") {
    RunResult rr = run_problem_text("ring x\nlet M = koszul [x\n", 1);
    CHECK(rr.exit_code == 2);
    RunResult rr2 = run_problem_text("ring x\nlet W = x +* 2\n", 1);
    CHECK(rr2.exit_code == 2);
    bool has_position = false;
    for (auto& l : rr2.lines) has_position |= l.value.find("position") != std::string::npos;
    CHECK(has_position);
}

TEST_CASE("INFINITE against a finite assertion is a computational failure") {
    std::string text = R"(
ring x y
assert milnor x^2*y == 3
)";
    RunResult rr = run_problem_text(text, 1);
    CHECK(rr.exit_code == 1);
}

TEST_CASE("INFINITE can be asserted explicitly") {
    std::string text = R"(
ring x y
assert milnor x^2*y == INFINITE
assert milnor x^2+y^2 == 1
)";
    RunResult rr = run_problem_text(text, 1);
    INFO(rr.text_report());
    CHECK(rr.exit_code == 0);
}

TEST_CASE("reports are deterministic and json mirrors text") {
    std::string text = R"(
ring x
let M = koszul [x] [x^2]
assert ext M M == (1, 1)
cmd curving M
)";
    RunResult a = run_problem_text(text, 7);
    RunResult b = run_problem_text(text, 7);
    CHECK(a.text_report() == b.text_report());
    CHECK(a.json_report() == b.json_report());
    CHECK(a.json_report().find("\"status\": \"pass\"") != std::string::npos);
}

TEST_CASE("constructors flow through the interpreter") {
    std::string text = R"(
ring x y
let M = koszul [x, y] [x, y]
let D = dual M
let F = flip M
assert curving D == -x^2-y^2
assert ranks M == (2, 2)
let I = identity [x] x^2
let P = koszul [x] [x]
let T = tensor P I
let R = exclude T x
assert ranks R == (1, 1)
assert curving R == x'^2
ring y
assert koszul_homology [y] == (1, 0)
ring x y
assert koszul_homology [x, y] == (1, 0)
)";
    RunResult rr = run_problem_text(text, 1);
    INFO(rr.text_report());
    CHECK(rr.exit_code == 0);
}

TEST_CASE("oracle query agrees with the pipeline") {
    std::string text = R"(
ring y1 y2
let M = koszul [y1 - i*y2] [y1 + i*y2]
assert ext M M == (1, 0)
assert oracle_ext M M == (1, 0)
)";
    RunResult rr = run_problem_text(text, 1);
    INFO(rr.text_report());
    CHECK(rr.exit_code == 0);
}

TEST_CASE("undefined names are reported") {
    RunResult rr = run_problem_text("ring x\ncmd ext M M\n", 1);
    CHECK(rr.exit_code == 2);
}
