#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace progcover::cli {

enum class Subcommand {
    cover_ap,
    cover_gp,
    intersect,
    lemma1,
    thm2_cover,
    dj_check,
    audit_g,
    audit_a,
    density,
    filter,
    scan_squarefree,
};

enum class Format { json, csv, text };

inline constexpr std::uint64_t kDefaultSeed = 20160807;

struct CommandConfig {
    Subcommand subcommand = Subcommand::cover_ap;
    std::optional<std::string> input_path;
    Format format = Format::json;
    std::uint64_t seed = kDefaultSeed;
    unsigned long n_max = 20;      // audits
    unsigned long prefix = 100;    // --N: GP prefix length for intersections
    unsigned long n = 10;          // --n: terms for thm2-cover and filter
    std::uint64_t x = 1'000'000;   // density range
    long j_max = 30;               // exponent scan
    unsigned long samples = 0;     // randomized dj-check / scan; 0 = default
    std::optional<std::string> a, b, s, r; // density / scan parameters
    bool timings = false;          // include runtime_ms in audit output
};

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

// Parses argv (argv[0] included). Help or a parse failure are reported on
// out/err and returned as an exit status instead of a config.
struct ParseOutcome {
    std::optional<CommandConfig> config;
    int exit_status = kExitOk;
};
ParseOutcome parse_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Dispatches one subcommand. 0: success and every checked bound held;
// 2: a bound or structural invariant was violated; 1: usage or domain error.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

// Exit status for a failure raised while running a subcommand, with the
// diagnostic written to err: invariant_violation maps to 2, anything else to 1.
int exit_status_for(std::exception_ptr error, std::ostream& err);

} // namespace progcover::cli
