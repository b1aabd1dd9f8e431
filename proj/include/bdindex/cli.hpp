#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "bdindex/anchors.hpp"

namespace bdindex {

enum class Command : std::uint8_t { build, query, stats, patgen, bench };
enum class Builder : std::uint8_t { full, sparse };
enum class QueryVariant : std::uint8_t { bidir, grid };

struct RunConfig {
    Command command = Command::build;
    std::string text_path;
    std::string index_path;
    std::string pattern_path;
    std::string anchors_out;
    std::string out_path;

    std::uint64_t ell = 0;
    std::optional<std::uint64_t> r; // default_r(ell, sigma) when unset
    AnchorKind kind = AnchorKind::randomized;
    std::uint64_t seed = 1;
    std::uint64_t block = 25000;
    Builder builder = Builder::sparse;
    QueryVariant variant = QueryVariant::bidir;
    bool strip_trailing_newline = true;
    bool oracle = false; // answer queries by scanning the text instead
    bool distinct = false;
    std::uint64_t pattern_len = 0;
    std::uint64_t pattern_count = 0;
    unsigned threads = 1;
};

// exit codes: 0 ok, 1 usage, 2 data (unreadable/corrupt file, mismatch)
int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_query(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_patgen(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace bdindex
