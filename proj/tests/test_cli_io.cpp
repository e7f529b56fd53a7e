#include "leleec/cli_io.hpp"
#include "leleec/error.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace leleec;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("leleec_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "leleec");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

LayoutFile layout_of(std::vector<Feature> features) {
    LayoutFile f;
    f.features = std::move(features);
    return f;
}

template <class E>
int thrown_line(const std::string& text) {
    try {
        parse_layout_text(text);
    } catch (const E& e) {
        if constexpr (std::is_same_v<E, ParseError>) return e.line();
        const std::string what = e.what();
        return what.rfind("line ", 0) == 0 ? std::stoi(what.substr(5)) : 0;
    }
    return -1;
}

}  // namespace

TEST(LayoutFormat, Defaults) {
    const auto f = parse_layout_text(R"({"format": 1, "w_min": 10, "s_min": 10, "features": []})");
    EXPECT_EQ(f.units, "nm");
    EXPECT_EQ(f.config.dis_m, 50);
    EXPECT_EQ(f.config.dis_c, 50);
    EXPECT_EQ(f.config.w_th, 50);
    EXPECT_EQ(f.config.merge_gap, 10);
    EXPECT_EQ(f.config.alpha, Rational(1, 10));
    EXPECT_TRUE(f.features.empty());
}

TEST(LayoutFormat, ExplicitMinimumDistanceDrivesDerivedRules) {
    const auto f = parse_layout_text(R"({"format": 1, "w_min": 10, "s_min": 10, "dis_m": 60, "dis_c": 55, "features": []})");
    EXPECT_EQ(f.config.dis_m, 60);
    EXPECT_EQ(f.config.w_th, 60);
    EXPECT_EQ(f.config.dis_c, 55);
}

TEST(LayoutFormat, RoundTrip) {
    LayoutFile f = layout_of(leleec::test::stitch_cycle());
    f.config.alpha = Rational(1, 3);
    f.config.dis_c = 70;
    f.config.merge_gap = 40;
    const std::string text = emit_layout(f);
    EXPECT_EQ(parse_layout_text(text), f);
    EXPECT_EQ(emit_layout(parse_layout_text(text)), text);
}

TEST(LayoutFormat, RandomRoundTrips) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const LayoutFile f = layout_of(leleec::test::random_layout(seed, 25, 400));
        ASSERT_EQ(parse_layout_text(emit_layout(f)), f);
    }
}

TEST(LayoutFormat, ErrorsCarryLineNumbers) {
    const std::string bad_syntax = "{\n  \"format\": 1,\n  \"w_min\": 10\n  \"s_min\": 10\n}\n";
    EXPECT_EQ(thrown_line<ParseError>(bad_syntax), 4);
    const std::string unknown = "{\"format\": 1, \"w_min\": 10, \"s_min\": 10, \"features\": [\n"
                                "  {\"id\": 0, \"rects\": [[0, 0, 10, 10]]},\n"
                                "  {\"id\": 1, \"rect\": [[50, 0, 60, 10]]}\n]}\n";
    EXPECT_EQ(thrown_line<ParseError>(unknown), 3);
    const std::string overlap = "{\"format\": 1, \"w_min\": 10, \"s_min\": 10, \"features\": [\n"
                                "  {\"id\": 0, \"rects\": [[0, 0, 10, 10]]},\n"
                                "  {\"id\": 1, \"rects\": [[5, 5, 20, 20]]}\n]}\n";
    EXPECT_THROW(parse_layout_text(overlap), ValidationError);
    const std::string empty_rect = "{\"format\": 1, \"w_min\": 10, \"s_min\": 10, \"features\": [\n"
                                   "  {\"id\": 0, \"rects\": [[0, 0, 0, 10]]}\n]}\n";
    EXPECT_EQ(thrown_line<ValidationError>(empty_rect), 2);
    const std::string duplicate = "{\"format\": 1, \"w_min\": 10, \"s_min\": 10, \"features\": [\n"
                                  "  {\"id\": 0, \"rects\": [[0, 0, 10, 10]]},\n"
                                  "  {\"id\": 0, \"rects\": [[50, 0, 60, 10]]}\n]}\n";
    EXPECT_EQ(thrown_line<ValidationError>(duplicate), 3);
    EXPECT_THROW(parse_layout_text(R"({"format": 2, "w_min": 10, "s_min": 10, "features": []})"), ParseError);
    EXPECT_THROW(parse_layout_text(R"({"format": 1, "w_min": 0, "s_min": 10, "features": []})"), ValidationError);
}

TEST(LayoutFormat, IdsMayComeInAnyOrder) {
    const auto f = parse_layout_text(R"({"format": 1, "w_min": 10, "s_min": 10, "features": [
        {"id": 1, "rects": [[100, 0, 110, 10]]}, {"id": 0, "rects": [[0, 0, 10, 10]]}]})");
    ASSERT_EQ(f.features.size(), 2u);
    EXPECT_EQ(f.features[0].id, 0);
    EXPECT_EQ(f.features[0].shape.rects[0], Rect::of(0, 0, 10, 10));
}

TEST(ResultFormat, RoundTripAndVerify) {
    const LayoutFile layout = layout_of(leleec::test::clique4());
    const auto d = decompose(layout.features, layout.config);
    const ResultFile r = make_result_file(d, layout.config);
    EXPECT_EQ(r.cost, 0);
    EXPECT_EQ(r.colors.size(), 4u);
    const std::string text = emit_result(r);
    const ResultFile back = parse_result_text(text);
    EXPECT_EQ(back, r);
    EXPECT_EQ(emit_result(back), text);
    EXPECT_TRUE(verify_result(layout, back).empty());
}

TEST(ResultFormat, VerifyCatchesTampering) {
    const LayoutFile layout = layout_of(leleec::test::stitch_cycle());
    const ResultFile r = make_result_file(decompose(layout.features, layout.config), layout.config);
    ASSERT_TRUE(verify_result(layout, r).empty());

    ResultFile wrong_cost = r;
    wrong_cost.cost = 0;
    EXPECT_FALSE(verify_result(layout, wrong_cost).empty());

    ResultFile flipped = r;
    flipped.colors[0] ^= 1;
    EXPECT_FALSE(verify_result(layout, flipped).empty());

    ResultFile moved = r;
    ASSERT_FALSE(moved.vertices.empty());
    moved.vertices[0].shape.rects[0].hi.x += 5;
    EXPECT_FALSE(verify_result(layout, moved).empty());
}

TEST(ResultFormat, RandomLayoutsVerify) {
    const Config cfg = Config::from_rules(10, 10);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        LayoutFile layout = layout_of(leleec::test::random_layout(seed, 30, 500));
        const auto r = make_result_file(decompose(layout.features, cfg), cfg);
        const auto problems = verify_result(layout, parse_result_text(emit_result(r)));
        ASSERT_TRUE(problems.empty()) << "seed " << seed << ": " << problems.front();
    }
}

TEST(Svg, DeterministicAndWellFormed) {
    const LayoutFile layout = layout_of(leleec::test::stitch_cycle());
    const auto r = make_result_file(decompose(layout.features, layout.config), layout.config);
    const std::string a = emit_svg(r), b = emit_svg(r);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("<?xml", 0), 0u);
    EXPECT_NE(a.find("<svg xmlns="), std::string::npos);
    EXPECT_NE(a.find("</svg>"), std::string::npos);
    EXPECT_NE(a.find("class=\"stitch\""), std::string::npos);
    const auto empty = make_result_file(decompose({}, layout.config), layout.config);
    const std::string e = emit_svg(empty);
    EXPECT_EQ(e, emit_svg(empty));
    EXPECT_NE(e.find("</svg>"), std::string::npos);
}

TEST(Generator, GridIsConflictFree) {
    const LayoutFile g = gen_synthetic("grid", 4, 1);
    EXPECT_EQ(g.features.size(), 16u);
    EXPECT_EQ(parse_layout_text(emit_layout(g)), g);
    EXPECT_EQ(decompose(g.features, g.config).result.cost, 0);
}

TEST(Generator, KindsAreDeterministicAndValid) {
    for (const char* kind : {"grid", "comb", "clique4_array", "via_array"}) {
        const LayoutFile a = gen_synthetic(kind, 3, 7);
        EXPECT_EQ(a, gen_synthetic(kind, 3, 7)) << kind;
        EXPECT_FALSE(a.features.empty()) << kind;
        EXPECT_NO_THROW(validate_features(a.features)) << kind;
    }
    EXPECT_EQ(decompose(gen_synthetic("clique4_array", 2, 1).features, Config::from_rules(10, 10)).result.cost, 0);
    EXPECT_THROW(gen_synthetic("spiral", 3, 1), ValidationError);
    EXPECT_THROW(gen_synthetic("grid", 0, 1), ValidationError);
}

TEST(Cli, ExitCodes) {
    TempDir dir;
    const auto layout = dir / "cycle.json";
    write_text(layout, emit_layout(layout_of(leleec::test::stitch_cycle())));
    const auto out = dir / "out.json";
    const auto svg = dir / "out.svg";
    const auto lp = dir / "model.lp";

    testing::internal::CaptureStdout();
    EXPECT_EQ(cli({"decompose", layout.string(), "--out", out.string(), "--svg", svg.string(), "--lp-dump", lp.string()}), 0);
    testing::internal::GetCapturedStdout();
    EXPECT_EQ(parse_result(out).cost, Rational(1, 10));
    EXPECT_TRUE(fs::exists(svg));
    EXPECT_NE(read_text(lp).find("Subject To"), std::string::npos);

    testing::internal::CaptureStdout();
    EXPECT_EQ(cli({"decompose", layout.string(), "--no-stitch", "--out", out.string()}), 0);
    testing::internal::GetCapturedStdout();
    EXPECT_EQ(parse_result(out).cost, 1);

    testing::internal::CaptureStdout();
    EXPECT_EQ(cli({"verify", layout.string(), out.string()}), 0);
    EXPECT_EQ(testing::internal::GetCapturedStdout(), "ok cost 1\n");

    ResultFile tampered = parse_result(out);
    tampered.cost = 0;
    write_text(out, emit_result(tampered));
    testing::internal::CaptureStderr();
    EXPECT_EQ(cli({"verify", layout.string(), out.string()}), 2);
    EXPECT_FALSE(testing::internal::GetCapturedStderr().empty());

    testing::internal::CaptureStderr();
    EXPECT_EQ(cli({"decompose"}), 1);
    EXPECT_EQ(cli({"decompose", layout.string(), "--preselect", "--no-preselect"}), 1);
    EXPECT_EQ(cli({"decompose", (dir / "missing.json").string()}), 2);
    write_text(dir / "bad.json", "{\"format\": 1,");
    EXPECT_EQ(cli({"decompose", (dir / "bad.json").string()}), 2);
    testing::internal::GetCapturedStderr();
}

TEST(Cli, GenAndBaseline) {
    TempDir dir;
    const auto layout = dir / "clique.json";
    EXPECT_EQ(cli({"gen", "clique4_array", "1", "--out", layout.string()}), 0);
    const auto base = dir / "base.json";
    testing::internal::CaptureStdout();
    EXPECT_EQ(cli({"baseline-lelele", layout.string(), "--out", base.string(), "--report", "text"}), 0);
    const std::string report = testing::internal::GetCapturedStdout();
    EXPECT_NE(report.find("cost 1"), std::string::npos) << report;
    EXPECT_NE(read_text(base).find("\"cost\": \"1\""), std::string::npos) << read_text(base);
}
