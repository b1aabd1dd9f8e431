#include "bdindex/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <unordered_set>

#include <CLI11.hpp>

#include "bdindex/bd_index.hpp"
#include "bdindex/kr_fingerprint.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

namespace bdindex {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
        .count();
}

long peak_rss_kb() {
#if defined(__unix__) || defined(__APPLE__)
    rusage ru{};
    if (getrusage(RUSAGE_SELF, &ru) == 0) return ru.ru_maxrss;
#endif
    return 0;
}

const char* kind_name(AnchorKind k) {
    return k == AnchorKind::lex ? "lex" : "ran";
}

std::vector<std::vector<std::uint8_t>> read_pattern_lines(
    const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open pattern file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    std::vector<std::vector<std::uint8_t>> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= bytes.size(); ++i) {
        if (i == bytes.size() || bytes[i] == '\n') {
            if (i == bytes.size() && i == start) break; // no final newline
            lines.emplace_back(bytes.begin() + start, bytes.begin() + i);
            start = i + 1;
        }
    }
    return lines;
}

struct BuiltIndex {
    AnchorSet anchors;
    BdIndex index;
    double anchors_ms = 0;
    double build_ms = 0;
};

BuiltIndex build_pipeline(const Text& text, const AnchorScheme& scheme,
                          const RunConfig& cfg) {
    const bool with_grid = cfg.variant == QueryVariant::grid;
    const auto t0 = clock_type::now();
    AnchorSet anchors = fast_anchors(text, scheme, cfg.block, cfg.threads);
    const double a_ms = ms_since(t0);
    const auto t1 = clock_type::now();
    BdIndex index = [&]() {
        if (cfg.builder == Builder::full)
            return BdIndex::build_full(text, anchors, with_grid);
        // sampled prefix tables keep the context at O(n / stride) words
        const std::uint64_t stride = text.size() >= 65536 ? 64 : 1;
        const KrContext kr(text, scheme.seed, stride);
        return BdIndex::build_sparse(text, anchors, kr, with_grid);
    }();
    return BuiltIndex{std::move(anchors), std::move(index), a_ms,
                      ms_since(t1)};
}

void write_anchor_dump(const std::string& path, const AnchorSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write anchor file: " + path);
    out << "# ell=" << set.scheme.ell << " r=" << set.scheme.r
        << " kind=" << kind_name(set.scheme.kind) << " seed=" << set.scheme.seed
        << " n=" << set.n << "\n";
    for (Pos p : set.positions) out << p << "\n";
    if (!out) throw std::runtime_error("anchor file write failed");
}

int data_error(std::ostream& err, const std::string& msg) {
    err << "error: " << msg << "\n";
    return 2;
}

} // namespace

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Text text =
            Text::from_file(cfg.text_path, cfg.strip_trailing_newline);
        if (cfg.ell > text.size())
            return data_error(err, "text shorter than window (ell > n)");
        const unsigned sigma = text.sigma();
        AnchorScheme scheme{cfg.ell, cfg.r ? *cfg.r : default_r(cfg.ell, sigma),
                            cfg.kind, cfg.seed};
        BuiltIndex built = build_pipeline(text, scheme, cfg);
        built.index.save_file(cfg.index_path);
        if (!cfg.anchors_out.empty())
            write_anchor_dump(cfg.anchors_out, built.anchors);
        const auto bytes = std::filesystem::file_size(cfg.index_path);
        const std::size_t m = built.anchors.positions.size();
        out << "# n\tsigma\tell\tr\tkind\tseed\tanchors\tdensity\tbuilder\t"
               "grid\tanchors_ms\tbuild_ms\tpeak_rss_kb\tindex_bytes\n";
        char dens[32];
        std::snprintf(dens, sizeof dens, "%.3f",
                      static_cast<double>(text.size()) / m);
        out << text.size() << '\t' << sigma << '\t' << scheme.ell << '\t'
            << scheme.r << '\t' << kind_name(scheme.kind) << '\t'
            << scheme.seed << '\t' << m << '\t' << dens << '\t'
            << (cfg.builder == Builder::full ? "full" : "sparse") << '\t'
            << (cfg.variant == QueryVariant::grid ? 1 : 0) << '\t'
            << built.anchors_ms << '\t' << built.build_ms << '\t'
            << peak_rss_kb() << '\t' << bytes << "\n";
        return 0;
    } catch (const std::exception& e) {
        return data_error(err, e.what());
    }
}

int cmd_query(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const BdIndex index = BdIndex::load_file(cfg.index_path);
        const Text text =
            Text::from_file(cfg.text_path, cfg.strip_trailing_newline);
        if (text.size() != index.n())
            return data_error(err, "text does not match index");
        const auto lines = read_pattern_lines(cfg.pattern_path);
        if (cfg.variant == QueryVariant::grid && !index.has_grid())
            return data_error(err, "index built without grid");
        for (std::size_t k = 0; k < lines.size(); ++k) {
            const byte_span pat(lines[k]);
            if (pat.size() < index.scheme().ell) {
                out << (k + 1) << "\tERR pattern-too-short\n";
                continue;
            }
            std::vector<Pos> occ;
            if (cfg.oracle)
                occ = naive_find_all(text, pat);
            else if (cfg.variant == QueryVariant::grid)
                occ = index.query_grid(text, pat);
            else
                occ = index.query(text, pat);
            out << (k + 1) << '\t' << occ.size() << '\t';
            for (std::size_t t = 0; t < occ.size(); ++t) {
                if (t) out << ' ';
                out << occ[t];
            }
            out << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        return data_error(err, e.what());
    }
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const BdIndex index = BdIndex::load_file(cfg.index_path);
        const auto bytes = std::filesystem::file_size(cfg.index_path);
        char dens[32];
        std::snprintf(dens, sizeof dens, "%.3f",
                      static_cast<double>(index.n()) / index.anchor_count());
        out << "# n\tanchors\tdensity\tell\tr\tkind\tseed\tgrid\twords\t"
               "index_bytes\n";
        out << index.n() << '\t' << index.anchor_count() << '\t' << dens
            << '\t' << index.scheme().ell << '\t' << index.scheme().r << '\t'
            << kind_name(index.scheme().kind) << '\t' << index.scheme().seed
            << '\t' << (index.has_grid() ? 1 : 0) << '\t' << index.words()
            << '\t' << bytes << "\n";
        return 0;
    } catch (const std::exception& e) {
        return data_error(err, e.what());
    }
}

int cmd_patgen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Text text =
            Text::from_file(cfg.text_path, cfg.strip_trailing_newline);
        const std::uint64_t len = cfg.pattern_len, count = cfg.pattern_count;
        if (len > text.size())
            return data_error(err, "pattern length exceeds text");
        SplitMix64 rng(cfg.seed);
        std::unordered_set<std::string> seen;
        std::vector<std::string> got;
        // patterns live one per line, so fragments containing a newline are
        // redrawn within the retry budget
        const std::uint64_t budget = 50 * count;
        for (std::uint64_t draws = 0; got.size() < count && draws < budget;
             ++draws) {
            const Pos p = 1 + rng.next_below(text.size() - len + 1);
            const byte_span frag = text.fragment(p, p + len - 1);
            if (std::find(frag.begin(), frag.end(), '\n') != frag.end())
                continue;
            std::string s(frag.begin(), frag.end());
            if (cfg.distinct && !seen.insert(s).second) continue;
            got.push_back(std::move(s));
        }
        if (got.size() < count)
            return data_error(err, "cannot generate enough patterns");
        std::ofstream file;
        std::ostream* dst = &out;
        if (!cfg.out_path.empty()) {
            file.open(cfg.out_path, std::ios::binary);
            if (!file)
                return data_error(err,
                                  "cannot write pattern file: " + cfg.out_path);
            dst = &file;
        }
        for (const auto& s : got) (*dst) << s << "\n";
        return 0;
    } catch (const std::exception& e) {
        return data_error(err, e.what());
    }
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Text text =
            Text::from_file(cfg.text_path, cfg.strip_trailing_newline);
        if (cfg.ell > text.size())
            return data_error(err, "text shorter than window (ell > n)");
        const unsigned sigma = text.sigma();
        const AnchorScheme scheme{
            cfg.ell, cfg.r ? *cfg.r : default_r(cfg.ell, sigma), cfg.kind,
            cfg.seed};
        const BuiltIndex built = build_pipeline(text, scheme, cfg);
        const auto lines = read_pattern_lines(cfg.pattern_path);
        std::uint64_t done = 0, skipped = 0, occ_total = 0;
        const auto t0 = clock_type::now();
        for (const auto& line : lines) {
            const byte_span pat(line);
            if (pat.size() < scheme.ell) {
                ++skipped;
                continue;
            }
            const auto occ = cfg.variant == QueryVariant::grid
                                 ? built.index.query_grid(text, pat)
                                 : built.index.query(text, pat);
            occ_total += occ.size();
            ++done;
        }
        const double q_ms = ms_since(t0);
        out << "n,sigma,ell,r,kind,seed,anchors,density,builder,variant,"
               "anchors_ms,build_ms,index_words,patterns,skipped,"
               "query_total_ms,query_mean_us,occ_total\n";
        char dens[32];
        std::snprintf(dens, sizeof dens, "%.3f",
                      static_cast<double>(text.size()) /
                          built.anchors.positions.size());
        out << text.size() << ',' << sigma << ',' << scheme.ell << ','
            << scheme.r << ',' << kind_name(scheme.kind) << ',' << scheme.seed
            << ',' << built.anchors.positions.size() << ',' << dens << ','
            << (cfg.builder == Builder::full ? "full" : "sparse") << ','
            << (cfg.variant == QueryVariant::grid ? "grid" : "bidir") << ','
            << built.anchors_ms << ',' << built.build_ms << ','
            << built.index.words() << ',' << done << ',' << skipped << ','
            << q_ms << ',' << (done ? q_ms * 1000.0 / done : 0.0) << ','
            << occ_total << "\n";
        return 0;
    } catch (const std::exception& e) {
        return data_error(err, e.what());
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"sampled suffix index over bidirectional string anchors"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::map<std::string, AnchorKind> kind_map{
        {"lex", AnchorKind::lex}, {"ran", AnchorKind::randomized}};
    const std::map<std::string, Builder> builder_map{
        {"full", Builder::full}, {"sparse", Builder::sparse}};
    const std::map<std::string, QueryVariant> variant_map{
        {"bidir", QueryVariant::bidir}, {"grid", QueryVariant::grid}};

    const auto add_strip = [&](CLI::App* sc) {
        sc->add_flag("--strip-trailing-newline,!--keep-trailing-newline",
                     cfg.strip_trailing_newline,
                     "drop one final newline from the text (default on)");
    };
    const auto add_scheme = [&](CLI::App* sc) {
        sc->add_option("--ell", cfg.ell, "window length (>= 2)")->required();
        sc->add_option("--r", cfg.r, "anchor reduction (default 4 log_sigma ell)");
        sc->add_option("--kind", cfg.kind, "anchor kind")
            ->transform(CLI::CheckedTransformer(kind_map))
            ->default_str("ran");
        sc->add_option("--seed", cfg.seed, "fingerprint seed");
        sc->add_option("--block", cfg.block, "block length (>= 2 ell)");
        sc->add_option("--builder", cfg.builder, "index builder")
            ->transform(CLI::CheckedTransformer(builder_map))
            ->default_str("sparse");
        sc->add_option("--variant", cfg.variant,
                       "bidir: verify one side; grid: 2d range reporting")
            ->transform(CLI::CheckedTransformer(variant_map))
            ->default_str("bidir");
        sc->add_option("--threads", cfg.threads, "anchor worker threads");
    };

    auto* build = app.add_subcommand("build", "index a text file");
    build->add_option("text", cfg.text_path, "text file")->required();
    build->add_option("-o,--index", cfg.index_path, "output index file")
        ->required();
    build->add_option("--anchors-out", cfg.anchors_out,
                      "also dump anchor positions to this file");
    add_scheme(build);
    add_strip(build);
    build->callback([&]() { cfg.command = Command::build; });

    auto* query = app.add_subcommand("query", "report pattern occurrences");
    query->add_option("index", cfg.index_path, "index file")->required();
    query->add_option("text", cfg.text_path, "text file")->required();
    query->add_option("patterns", cfg.pattern_path, "one pattern per line")
        ->required();
    query->add_option("--variant", cfg.variant, "query mode")
        ->transform(CLI::CheckedTransformer(variant_map))
        ->default_str("bidir");
    query->add_flag("--oracle", cfg.oracle,
                    "answer by scanning the text (ignores the index arrays)");
    add_strip(query);
    query->callback([&]() { cfg.command = Command::query; });

    auto* stats = app.add_subcommand("stats", "print index file summary");
    stats->add_option("index", cfg.index_path, "index file")->required();
    stats->callback([&]() { cfg.command = Command::stats; });

    auto* patgen =
        app.add_subcommand("patgen", "sample patterns from a text");
    patgen->add_option("text", cfg.text_path, "text file")->required();
    patgen->add_option("--len", cfg.pattern_len, "pattern length")
        ->required()
        ->check(CLI::PositiveNumber);
    patgen->add_option("--count", cfg.pattern_count, "number of patterns")
        ->required()
        ->check(CLI::PositiveNumber);
    patgen->add_option("--seed", cfg.seed, "sampling seed");
    patgen->add_flag("--distinct", cfg.distinct, "reject repeated patterns");
    patgen->add_option("--out", cfg.out_path, "output file (default stdout)");
    add_strip(patgen);
    patgen->callback([&]() { cfg.command = Command::patgen; });

    auto* bench = app.add_subcommand(
        "bench", "build in memory and time a pattern batch");
    bench->add_option("text", cfg.text_path, "text file")->required();
    bench->add_option("patterns", cfg.pattern_path, "one pattern per line")
        ->required();
    add_scheme(bench);
    add_strip(bench);
    bench->callback([&]() { cfg.command = Command::bench; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if ((cfg.command == Command::build || cfg.command == Command::bench)) {
        if (cfg.ell < 2) {
            err << "error: ell must be at least 2\n";
            return 1;
        }
        if (cfg.r && *cfg.r > cfg.ell - 1) {
            err << "error: r out of range\n";
            return 1;
        }
        if (cfg.block < 2 * cfg.ell) {
            err << "error: block must cover two windows\n";
            return 1;
        }
        if (cfg.threads == 0) cfg.threads = 1;
    }

    switch (cfg.command) {
        case Command::build: return cmd_build(cfg, out, err);
        case Command::query: return cmd_query(cfg, out, err);
        case Command::stats: return cmd_stats(cfg, out, err);
        case Command::patgen: return cmd_patgen(cfg, out, err);
        case Command::bench: return cmd_bench(cfg, out, err);
    }
    return 1;
}

} // namespace bdindex
