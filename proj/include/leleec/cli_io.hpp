#pragma once

#include "leleec/decomposer.hpp"
#include "leleec/geometry.hpp"
#include "leleec/layout_graph.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace leleec {

inline constexpr int kFormatVersion = 1;

struct LayoutFile {
    std::string units = "nm";
    Config config;
    std::vector<Feature> features;
};

bool operator==(const LayoutFile& a, const LayoutFile& b);

/// Parses the JSON layout schema. Rules missing from the file are derived
/// from w_min and s_min. Syntax and field errors carry the line number.
LayoutFile parse_layout_text(std::string_view text);
LayoutFile parse_layout(const std::filesystem::path& path);

/// One header line per field, one feature per line; parses back to an equal LayoutFile.
std::string emit_layout(const LayoutFile& layout);

struct CutRecord {
    int id = 0;
    int u = 0;
    int v = 0;
    Rect rect;
    CutKind kind = CutKind::edge_edge;
    bool operator==(const CutRecord&) const = default;
};

struct StitchRecord {
    int feature = 0;
    Axis axis = Axis::horizontal;
    Coord at = 0;
    int u = 0;
    int v = 0;
    bool operator==(const StitchRecord&) const = default;
};

struct ResultStats {
    int components = 0;
    int subproblems = 0;
    int bridges_cut = 0;
    int preselected = 0;
    int max_variables = 0;
    std::uint64_t nodes_explored = 0;
    bool proven_optimal = true;
    bool operator==(const ResultStats&) const = default;
};

struct ResultFile {
    Config config;
    std::vector<Segment> vertices;
    std::vector<int> colors;  ///< 0 or 1 per vertex; written as mask 1 or 2
    std::vector<CutRecord> cuts;
    std::vector<Rect> trim_cuts;
    std::vector<std::pair<int, int>> conflicts;
    std::vector<StitchRecord> stitches;
    Rational cost;
    ResultStats stats;
};

bool operator==(const ResultFile& a, const ResultFile& b);

ResultFile make_result_file(const Decomposition& d, const Config& cfg);
std::string emit_result(const ResultFile& result);
ResultFile parse_result_text(std::string_view text);
ResultFile parse_result(const std::filesystem::path& path);

/// Rebuilds the graphs from the layout under the result's config and lists
/// every broken invariant. Empty when the result is consistent.
std::vector<std::string> verify_result(const LayoutFile& layout, const ResultFile& result);

/// Mask fills per vertex, hatched trim shapes, dashed stitch lines and a
/// red line with arrowheads per conflict pair.
std::string emit_svg(const ResultFile& result);

std::string emit_baseline(const BaselineDecomposition& d);

/// grid, comb, clique4_array or via_array. Throws ValidationError on an unknown kind or n < 1.
LayoutFile gen_synthetic(std::string_view kind, int n, std::uint64_t seed,
                         const Config& cfg = Config::from_rules(10, 10));

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// CLI entry point: 0 ok, 1 usage, 2 invalid input or result, 3 time limit.
int run_cli(int argc, const char* const* argv);

}  // namespace leleec
