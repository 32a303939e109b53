#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bonesoup/harness.hpp"

using namespace bonesoup;
namespace fs = std::filesystem;

namespace {

const char* kQuadraticConfig = R"({
  "world": {
    "kind": "quadratic",
    "rewards": [
      {"maximizer": [1.0, 1.0], "curvature": 1.0},
      {"maximizer": [3.0, -1.0], "curvature": [[1.0, 0.0], [0.0, 4.0]]}
    ],
    "reference": [0.0, 0.0]
  },
  "objectives": 2,
  "methods": [
    {"kind": "bone_soup", "beta": 0.6},
    {"kind": "rewarded_soup"},
    {"kind": "morlhf_oracle"}
  ],
  "grid": {"two_obj_step": 0.1},
  "trainer": {"eta": 0.0}
})";

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const RowRecord& row_at(const MethodRun& run, const Vec& pref) {
    for (const RowRecord& row : run.rows) {
        bool match = true;
        for (std::size_t i = 0; i < pref.size(); ++i) {
            if (std::fabs(row.preference[i] - pref[i]) > 1e-12) match = false;
        }
        if (match) return row;
    }
    throw std::logic_error("preference not found");
}

}  // namespace

TEST_CASE("generate_grid sizes and exactness") {
    const auto g2 = generate_grid(2, 0.1);
    CHECK(g2.size() == 11);
    CHECK(g2[3][0] == 0.3);  // exact decimal construction: 3/10.0
    CHECK(g2[3][1] == 0.7);

    const auto g3 = generate_grid(3, 0.1);
    CHECK(g3.size() == 66);

    CHECK_THROWS_AS(generate_grid(4, 0.1), ConfigError);
    CHECK_THROWS_AS(generate_grid(2, 0.2), ConfigError);
}

TEST_CASE("config parsing is strict") {
    CHECK_NOTHROW(parse_config(kQuadraticConfig));
    std::string with_unknown = kQuadraticConfig;
    with_unknown.insert(with_unknown.rfind('}'), ", \"mystery_key\": 1");
    CHECK_THROWS_AS(parse_config(with_unknown), ConfigError);
    CHECK_THROWS_AS(parse_config("{\"objectives\": 2}"), ConfigError);  // missing keys
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("config validation catches structural problems") {
    ExperimentConfig config = parse_config(kQuadraticConfig);
    config.methods.clear();
    CHECK_THROWS_AS(config.validate(), ConfigError);

    config = parse_config(kQuadraticConfig);
    config.objectives = 3;
    CHECK_THROWS_AS(config.validate(), ConfigError);

    config = parse_config(kQuadraticConfig);
    config.methods.push_back(MethodTag::random_matrix(1));  // needs 3 objectives
    CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("run_method reward values on the toy example world") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const Vec half = {0.5, 0.5};

    const MethodRun rs = run_method(MethodTag::rewarded_soup(), config);
    CHECK(row_at(rs, half).rewards[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(row_at(rs, half).rewards[1] == doctest::Approx(-5.0).epsilon(1e-12));

    const MethodRun bs = run_method(MethodTag::bone_soup(0.6), config);
    CHECK(row_at(bs, half).rewards[0] == doctest::Approx(-3.5104).epsilon(1e-4));
    CHECK(row_at(bs, half).rewards[1] == doctest::Approx(-1.6908).epsilon(1e-4));

    const MethodRun oracle = run_method(MethodTag::morlhf_oracle(), config);
    CHECK(row_at(oracle, half).rewards[0] == doctest::Approx(-3.56).epsilon(1e-12));
    CHECK(row_at(oracle, half).rewards[1] == doctest::Approx(-1.64).epsilon(1e-12));
}

TEST_CASE("recorded coefficients satisfy B lambda = mu") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    for (double beta : {0.6, 0.7, 0.8}) {
        const CombinationMatrix b = build_circulant(2, beta);
        const MethodRun run = run_method(MethodTag::bone_soup(beta), config);
        for (const RowRecord& row : run.rows) {
            for (int i = 0; i < 2; ++i) {
                double s = 0.0;
                for (int j = 0; j < 2; ++j) s += b.entries()[i][j] * row.coefficients[j];
                CHECK(std::fabs(s - row.preference[i]) < 1e-10);
            }
        }
    }
}

TEST_CASE("the oracle's testing reward weakly dominates all methods pointwise") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const SweepResult result = run_sweep(config);
    const MethodRun* oracle = nullptr;
    for (const MethodRun& run : result.runs) {
        if (run.tag.kind == MethodTag::Kind::MorlhfOracle) oracle = &run;
    }
    REQUIRE(oracle != nullptr);
    for (const MethodRun& run : result.runs) {
        for (std::size_t i = 0; i < run.rows.size(); ++i) {
            double g_method = 0.0, g_oracle = 0.0;
            for (int k = 0; k < 2; ++k) {
                g_method += run.rows[i].preference[k] * run.rows[i].rewards[k];
                g_oracle += oracle->rows[i].preference[k] * oracle->rows[i].rewards[k];
            }
            CHECK(g_oracle >= g_method - 1e-9);
        }
    }
}

TEST_CASE("run_sweep row counts") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const SweepResult result = run_sweep(config);
    std::size_t total = 0;
    for (const MethodRun& run : result.runs) total += run.rows.size();
    CHECK(total == 33);  // 3 methods x 11 grid points
    CHECK(result.reports.size() == 3);
}

TEST_CASE("3-objective sweep covers the 66-point lattice") {
    const char* config3 = R"({
      "world": {
        "kind": "quadratic",
        "rewards": [
          {"maximizer": [1.0, 0.0, 0.0], "curvature": 1.0},
          {"maximizer": [0.0, 1.0, 0.0], "curvature": 2.0},
          {"maximizer": [0.0, 0.0, 1.0], "curvature": 3.0}
        ],
        "reference": [0.0, 0.0, 0.0]
      },
      "objectives": 3,
      "methods": [{"kind": "rewarded_soup"}],
      "grid": {"three_obj_step": 0.1}
    })";
    const SweepResult result = run_sweep(parse_config(config3));
    CHECK(result.runs.size() == 1);
    CHECK(result.runs[0].rows.size() == 66);
}

TEST_CASE("rewarded soup equals bone soup with an identity matrix") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const MethodRun rs = run_method(MethodTag::rewarded_soup(), config);

    const auto& quad = std::get<QuadraticWorld>(config.world);
    TrainerConfig tc = config.trainer;
    const BackboneSet soup = train_backbones(identity_matrix(2), config.world, tc.eta, tc);
    for (const RowRecord& row : rs.rows) {
        const ParamVector merged = merge(soup, row.preference);
        const Vec rewards = eval_all_rewards(config.world, merged.values());
        for (int k = 0; k < 2; ++k) {
            CHECK(rewards[k] == doctest::Approx(row.rewards[k]).epsilon(1e-12));
        }
    }
    CHECK(quad.rewards.size() == 2);
}

TEST_CASE("emit_outputs writes byte-identical files across runs") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const fs::path dir1 = fs::temp_directory_path() / "bonesoup_det_1";
    const fs::path dir2 = fs::temp_directory_path() / "bonesoup_det_2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    emit_outputs(run_sweep(config), dir1.string());
    emit_outputs(run_sweep(config), dir2.string());
    for (const char* name : {"fronts.csv", "metrics.csv", "result.json"}) {
        CHECK(read_file(dir1 / name) == read_file(dir2 / name));
        CHECK(!read_file(dir1 / name).empty());
    }
    // 3 methods x 11 rows + header
    std::istringstream fronts(read_file(dir1 / "fronts.csv"));
    std::string line;
    int lines = 0;
    while (std::getline(fronts, line)) ++lines;
    CHECK(lines == 34);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("plotdata files are sorted by the first preference component") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const fs::path dir = fs::temp_directory_path() / "bonesoup_plotdata";
    fs::remove_all(dir);
    emit_outputs(run_sweep(config), dir.string());
    std::istringstream in(read_file(dir / "plotdata" / "rewarded_soup.csv"));
    std::string line;
    std::getline(in, line);  // header
    double prev = -1.0;
    int rows = 0;
    while (std::getline(in, line)) {
        const double p0 = std::stod(line.substr(0, line.find(',')));
        CHECK(p0 >= prev);
        prev = p0;
        ++rows;
    }
    CHECK(rows == 11);
    fs::remove_all(dir);
}

TEST_CASE("unwritable output directory raises IoFailure") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const SweepResult result = run_sweep(config);
    CHECK_THROWS_AS(emit_outputs(result, "/proc/no_such_place/out"), IoFailure);
}

TEST_CASE("fronts.csv round-trips through the parser") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const SweepResult result = run_sweep(config);
    const std::vector<MethodRun> parsed = parse_fronts_csv(fronts_csv(result));
    REQUIRE(parsed.size() == result.runs.size());
    for (std::size_t m = 0; m < parsed.size(); ++m) {
        CHECK(parsed[m].name() == result.runs[m].name());
        REQUIRE(parsed[m].rows.size() == result.runs[m].rows.size());
        for (std::size_t i = 0; i < parsed[m].rows.size(); ++i) {
            for (int k = 0; k < 2; ++k) {
                // %.17g serialization is lossless for doubles
                CHECK(parsed[m].rows[i].rewards[k] == result.runs[m].rows[i].rewards[k]);
                CHECK(parsed[m].rows[i].coefficients[k] ==
                      result.runs[m].rows[i].coefficients[k]);
            }
        }
    }
}

TEST_CASE("extrapolated and aba methods run end to end") {
    std::string text = kQuadraticConfig;
    const std::string methods =
        R"([{"kind": "aba", "beta": 0.6},
            {"kind": "extrapolated", "alpha": 0.2, "inner": {"kind": "bone_soup", "beta": 0.6}}])";
    const std::size_t start = text.find("\"methods\": ");
    const std::size_t open = text.find('[', start);
    const std::size_t close = text.find(']', open);
    text.replace(open, close - open + 1, methods);
    const SweepResult result = run_sweep(parse_config(text));
    CHECK(result.runs.size() == 2);
    CHECK(result.runs[0].rows.size() == 11);
    CHECK(result.runs[1].rows.size() == 11);
    // aba records lambda = mu
    for (const RowRecord& row : result.runs[0].rows) {
        CHECK(row.coefficients[0] == row.preference[0]);
    }
}

TEST_CASE("auto hypervolume reference sits below every front point") {
    const ExperimentConfig config = parse_config(kQuadraticConfig);
    const SweepResult result = run_sweep(config);
    for (const MethodRun& run : result.runs) {
        for (const RowRecord& row : run.rows) {
            for (int k = 0; k < 2; ++k) {
                CHECK(row.rewards[k] > result.hv_reference_used[k]);
            }
        }
    }
}
