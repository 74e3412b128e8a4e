#pragma once

#include <string>
#include <vector>

namespace mfcat {

/// Outcome of one problem-file statement.
struct StatementResult {
    std::string key;     // e.g. "ext M M"
    std::string value;   // printable result
    enum Kind { INFO, ASSERT_PASS, ASSERT_FAIL, ERROR } kind = INFO;
};

struct RunResult {
    int exit_code = 0;   // 0 ok, 1 computational failure, 2 parse error, 3 assertion failed
    std::vector<StatementResult> lines;

    std::string text_report() const;
    std::string json_report() const;
};

/// Execute a problem file: ring declarations, let-definitions, commands and
/// assertions, processed in order. Deterministic for fixed input and seed.
RunResult run_problem_file(const std::string& path, unsigned seed);
RunResult run_problem_text(const std::string& text, unsigned seed);

} // namespace mfcat
