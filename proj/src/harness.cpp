#include "bonesoup/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace bonesoup {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

Vec parse_vec(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be an array of numbers");
    Vec out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(where + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Matrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be an array of rows");
    Matrix out;
    for (const auto& row : j) out.push_back(parse_vec(row, where));
    return out;
}

World parse_world(const json& j) {
    if (!j.is_object()) throw ConfigError("world must be an object");
    const std::string kind = j.value("kind", "");
    if (kind == "quadratic") {
        require_keys(j, {"kind", "rewards", "reference"}, "world");
        if (!j.contains("rewards") || !j.contains("reference")) {
            throw ConfigError("quadratic world needs 'rewards' and 'reference'");
        }
        std::vector<QuadraticReward> rewards;
        for (const auto& r : j.at("rewards")) {
            require_keys(r, {"peak", "maximizer", "curvature"}, "world.rewards[]");
            if (!r.contains("maximizer") || !r.contains("curvature")) {
                throw ConfigError("quadratic reward needs 'maximizer' and 'curvature'");
            }
            ParamVector maximizer(parse_vec(r.at("maximizer"), "maximizer"));
            const json& c = r.at("curvature");
            Curvature curv = c.is_number()
                                 ? Curvature(c.get<double>())
                                 : Curvature(parse_matrix(c, "curvature"));
            rewards.emplace_back(r.value("peak", 0.0), std::move(maximizer), std::move(curv));
        }
        return QuadraticWorld{std::move(rewards),
                              ParamVector(parse_vec(j.at("reference"), "world.reference"))};
    }
    if (kind == "bandit") {
        require_keys(j,
                     {"kind", "num_contexts", "num_arms", "context_probs", "reward_tables",
                      "reference_logits"},
                     "world");
        for (const char* key : {"num_contexts", "num_arms", "context_probs", "reward_tables"}) {
            if (!j.contains(key)) {
                throw ConfigError(std::string("bandit world needs '") + key + "'");
            }
        }
        const int c = j.at("num_contexts").get<int>();
        const int a = j.at("num_arms").get<int>();
        std::vector<Matrix> tables;
        for (const auto& t : j.at("reward_tables")) {
            tables.push_back(parse_matrix(t, "reward_tables[]"));
        }
        BanditEnvironment env(c, a, parse_vec(j.at("context_probs"), "context_probs"),
                              std::move(tables));
        SoftmaxPolicy reference =
            j.contains("reference_logits")
                ? SoftmaxPolicy(parse_matrix(j.at("reference_logits"), "reference_logits"))
                : SoftmaxPolicy(c, a);
        return BanditWorld{std::move(env), std::move(reference)};
    }
    throw ConfigError("world.kind must be 'quadratic' or 'bandit'");
}

MethodTag parse_method(const json& j) {
    if (!j.is_object()) throw ConfigError("method entries must be objects");
    const std::string kind = j.value("kind", "");
    if (kind == "bone_soup") {
        require_keys(j, {"kind", "beta"}, "methods[]");
        if (!j.contains("beta")) throw ConfigError("bone_soup method needs 'beta'");
        return MethodTag::bone_soup(j.at("beta").get<double>());
    }
    if (kind == "rewarded_soup") {
        require_keys(j, {"kind"}, "methods[]");
        return MethodTag::rewarded_soup();
    }
    if (kind == "morlhf_oracle") {
        require_keys(j, {"kind"}, "methods[]");
        return MethodTag::morlhf_oracle();
    }
    if (kind == "aba") {
        require_keys(j, {"kind", "beta"}, "methods[]");
        if (!j.contains("beta")) throw ConfigError("aba method needs 'beta'");
        return MethodTag::aba(j.at("beta").get<double>());
    }
    if (kind == "random_matrix") {
        require_keys(j, {"kind", "id"}, "methods[]");
        if (!j.contains("id")) throw ConfigError("random_matrix method needs 'id'");
        return MethodTag::random_matrix(j.at("id").get<int>());
    }
    if (kind == "extrapolated") {
        require_keys(j, {"kind", "alpha", "inner"}, "methods[]");
        if (!j.contains("alpha") || !j.contains("inner")) {
            throw ConfigError("extrapolated method needs 'alpha' and 'inner'");
        }
        return MethodTag::extrapolated(j.at("alpha").get<double>(), parse_method(j.at("inner")));
    }
    throw ConfigError("unknown method kind '" + kind + "'");
}

GridSpec parse_grid(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    require_keys(j, {"two_obj_step", "three_obj_step", "explicit"}, where);
    GridSpec grid;
    int set_count = 0;
    if (j.contains("two_obj_step")) {
        grid.two_obj_step = j.at("two_obj_step").get<double>();
        ++set_count;
    }
    if (j.contains("three_obj_step")) {
        grid.three_obj_step = j.at("three_obj_step").get<double>();
        ++set_count;
    }
    if (j.contains("explicit")) {
        for (const auto& p : j.at("explicit")) {
            grid.explicit_points.push_back(parse_vec(p, where + ".explicit[]"));
        }
        ++set_count;
    }
    if (set_count != 1) {
        throw ConfigError(where + " needs exactly one of two_obj_step/three_obj_step/explicit");
    }
    return grid;
}

std::vector<PreferenceVector> resolve_grid(const GridSpec& grid, int n) {
    if (grid.two_obj_step) {
        if (n != 2) throw ConfigError("UnsupportedGrid: two_obj_step needs objectives = 2");
        return generate_grid(2, *grid.two_obj_step);
    }
    if (grid.three_obj_step) {
        if (n != 3) throw ConfigError("UnsupportedGrid: three_obj_step needs objectives = 3");
        return generate_grid(3, *grid.three_obj_step);
    }
    std::vector<PreferenceVector> out;
    for (const Vec& p : grid.explicit_points) {
        if (static_cast<int>(p.size()) != n) {
            throw ConfigError("UnsupportedGrid: explicit point dimension mismatch");
        }
        out.push_back(make_preference(p));
    }
    if (out.empty()) throw ConfigError("UnsupportedGrid: empty explicit grid");
    return out;
}

json world_json(const World& world) {
    json j;
    if (const auto* q = std::get_if<QuadraticWorld>(&world)) {
        j["kind"] = "quadratic";
        j["reference"] = q->reference.values();
        json rewards = json::array();
        for (const QuadraticReward& r : q->rewards) {
            json jr;
            jr["peak"] = r.peak;
            jr["maximizer"] = r.maximizer.values();
            if (r.curvature.isotropic()) {
                jr["curvature"] = r.curvature.scalar();
            } else {
                jr["curvature"] = r.curvature.matrix();
            }
            rewards.push_back(std::move(jr));
        }
        j["rewards"] = std::move(rewards);
    } else {
        const auto& b = std::get<BanditWorld>(world);
        j["kind"] = "bandit";
        j["num_contexts"] = b.env.num_contexts;
        j["num_arms"] = b.env.num_arms;
        j["context_probs"] = b.env.context_probs;
        j["reward_tables"] = b.env.reward_tables;
        j["reference_logits"] = b.reference.logits();
    }
    return j;
}

json method_json(const MethodTag& tag) {
    json j;
    switch (tag.kind) {
        case MethodTag::Kind::BoneSoup:
            j["kind"] = "bone_soup";
            j["beta"] = tag.beta;
            break;
        case MethodTag::Kind::RewardedSoup:
            j["kind"] = "rewarded_soup";
            break;
        case MethodTag::Kind::MorlhfOracle:
            j["kind"] = "morlhf_oracle";
            break;
        case MethodTag::Kind::Aba:
            j["kind"] = "aba";
            j["beta"] = tag.beta;
            break;
        case MethodTag::Kind::RandomMatrix:
            j["kind"] = "random_matrix";
            j["id"] = tag.catalog_id;
            break;
        case MethodTag::Kind::Extrapolated:
            j["kind"] = "extrapolated";
            j["alpha"] = tag.alpha;
            j["inner"] = method_json(*tag.inner);
            break;
    }
    return j;
}

json grid_json(const GridSpec& grid) {
    json j;
    if (grid.two_obj_step) {
        j["two_obj_step"] = *grid.two_obj_step;
    } else if (grid.three_obj_step) {
        j["three_obj_step"] = *grid.three_obj_step;
    } else {
        j["explicit"] = grid.explicit_points;
    }
    return j;
}

json config_json(const ExperimentConfig& config) {
    json j;
    j["world"] = world_json(config.world);
    j["objectives"] = config.objectives;
    json methods = json::array();
    for (const MethodTag& m : config.methods) methods.push_back(method_json(m));
    j["methods"] = std::move(methods);
    j["grid"] = grid_json(config.grid);
    j["trainer"] = {{"eta", config.trainer.eta},
                    {"steps", config.trainer.steps},
                    {"learning_rate", config.trainer.learning_rate},
                    {"budget_fraction", config.trainer.budget_fraction}};
    j["beta_candidates"] = config.beta_candidates;
    j["alpha_candidates"] = config.alpha_candidates;
    if (config.hv_reference) {
        j["hv_reference"] = *config.hv_reference;
    } else {
        j["hv_reference"] = "auto";
    }
    if (config.validation_grid) j["validation_grid"] = grid_json(*config.validation_grid);
    j["seed"] = config.seed;
    j["output_dir"] = config.output_dir;
    return j;
}

std::string sanitize_filename(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
            out += c;
        } else {
            out += '_';
        }
    }
    return out;
}

// Beta/alpha columns for the CSV; empty when not applicable.
std::pair<std::string, std::string> tag_beta_alpha(const MethodTag& tag) {
    switch (tag.kind) {
        case MethodTag::Kind::BoneSoup:
        case MethodTag::Kind::Aba:
            return {fmt17(tag.beta), ""};
        case MethodTag::Kind::Extrapolated: {
            auto inner = tag_beta_alpha(*tag.inner);
            return {inner.first, fmt17(tag.alpha)};
        }
        default:
            return {"", ""};
    }
}

}  // namespace

std::vector<PreferenceVector> generate_grid(int n, double step) {
    if (step != 0.1) {
        throw ConfigError("UnsupportedGrid: only step 0.1 is supported");
    }
    std::vector<PreferenceVector> out;
    if (n == 2) {
        for (int i = 0; i <= 10; ++i) {
            out.push_back(make_preference({static_cast<double>(i) / 10.0,
                                           static_cast<double>(10 - i) / 10.0}));
        }
        return out;
    }
    if (n == 3) {
        for (int i = 0; i <= 10; ++i) {
            for (int j = 0; i + j <= 10; ++j) {
                const int k = 10 - i - j;
                out.push_back(make_preference({static_cast<double>(i) / 10.0,
                                               static_cast<double>(j) / 10.0,
                                               static_cast<double>(k) / 10.0}));
            }
        }
        return out;
    }
    throw ConfigError("UnsupportedGrid: n must be 2 or 3");
}

void ExperimentConfig::validate() const {
    if (objectives != num_objectives(world)) {
        throw ConfigError("objectives does not match the world's reward count");
    }
    if (methods.empty()) {
        throw ConfigError("methods must be non-empty");
    }
    trainer.validate();
    for (const MethodTag& m : methods) {
        if (m.kind == MethodTag::Kind::RandomMatrix && objectives != 3) {
            throw ConfigError("random_matrix methods need objectives = 3");
        }
    }
    if (hv_reference && static_cast<int>(hv_reference->size()) != objectives) {
        throw ConfigError("hv_reference dimension mismatch");
    }
    (void)grid_points();
}

std::vector<PreferenceVector> ExperimentConfig::grid_points() const {
    return resolve_grid(grid, objectives);
}

std::vector<PreferenceVector> ExperimentConfig::validation_points() const {
    if (validation_grid) return resolve_grid(*validation_grid, objectives);
    return grid_points();
}

std::vector<FrontPoint> MethodRun::front() const {
    std::vector<FrontPoint> out;
    out.reserve(rows.size());
    for (const RowRecord& row : rows) {
        out.emplace_back(row.preference, row.rewards, tag);
    }
    return out;
}

namespace {

CombinationMatrix matrix_for(const MethodTag& tag, int n) {
    switch (tag.kind) {
        case MethodTag::Kind::BoneSoup:
        case MethodTag::Kind::Aba:
            return build_circulant(n, tag.beta);
        case MethodTag::Kind::RewardedSoup:
            return identity_matrix(n);
        case MethodTag::Kind::RandomMatrix: {
            CombinationMatrix m = random_catalog(tag.catalog_id);
            if (static_cast<int>(m.dim()) != n) {
                throw ConfigError("random_matrix catalog entries are 3x3");
            }
            return m;
        }
        default:
            throw ConfigError("method has no combination matrix");
    }
}

// Per-preference direct optimization of g_mu. The quadratic oracle uses
// eta = 0 so its testing reward is the exact per-preference maximum; the
// bandit oracle is the Gibbs optimum at the configured eta.
Vec oracle_params(const World& world, const PreferenceVector& mu, const TrainerConfig& trainer) {
    if (const auto* q = std::get_if<QuadraticWorld>(&world)) {
        return train_quadratic_closed_form(q->rewards, mu.values(), 0.0, q->reference).values();
    }
    const auto& b = std::get<BanditWorld>(world);
    return bandit_kl_closed_form(b.env, mu.values(), trainer.eta, b.reference).to_flat();
}

}  // namespace

MethodRun run_method(const MethodTag& method, const ExperimentConfig& config) {
    const std::vector<PreferenceVector> grid = config.grid_points();
    const int n = config.objectives;
    MethodRun run{method, {}, {}};
    run.rows.reserve(grid.size());

    try {
        if (method.kind == MethodTag::Kind::MorlhfOracle) {
            for (const PreferenceVector& mu : grid) {
                const Vec params = oracle_params(config.world, mu, config.trainer);
                run.rows.push_back({mu, mu.values(), eval_all_rewards(config.world, params)});
            }
            return run;
        }
        if (method.kind == MethodTag::Kind::Extrapolated) {
            const MethodTag& inner = *method.inner;
            if (inner.kind == MethodTag::Kind::MorlhfOracle ||
                inner.kind == MethodTag::Kind::Extrapolated) {
                throw ConfigError("extrapolated wraps a merging method");
            }
            const CombinationMatrix matrix = matrix_for(inner, n);
            const BackboneSet backbones =
                train_backbones(matrix, config.world, config.trainer.eta, config.trainer);
            const ParamVector reference(backbones.reference);
            for (const PreferenceVector& mu : grid) {
                const bool aba = inner.kind == MethodTag::Kind::Aba;
                const Vec lambda =
                    aba ? mu.values() : solve_coefficients(matrix, mu).values();
                const ParamVector merged = linear_combination(backbones.models, lambda);
                const ParamVector adjusted = extrapolate(merged, reference, method.alpha);
                run.rows.push_back({mu, lambda, eval_all_rewards(config.world, adjusted.values())});
            }
            return run;
        }

        const CombinationMatrix matrix = matrix_for(method, n);
        const BackboneSet backbones =
            train_backbones(matrix, config.world, config.trainer.eta, config.trainer);
        for (const PreferenceVector& mu : grid) {
            const bool aba = method.kind == MethodTag::Kind::Aba;
            const Vec lambda = aba ? mu.values() : solve_coefficients(matrix, mu).values();
            const ParamVector merged = linear_combination(backbones.models, lambda);
            run.rows.push_back({mu, lambda, eval_all_rewards(config.world, merged.values())});
        }
        return run;
    } catch (const NumericalError& e) {
        throw NumericalError("TrainingFailure in method " + method.name() + ": " + e.what());
    }
}

Vec auto_hv_reference(const std::vector<MethodRun>& runs) {
    if (runs.empty() || runs.front().rows.empty()) {
        throw ConfigError("auto_hv_reference: no front points");
    }
    const std::size_t n = runs.front().rows.front().rewards.size();
    Vec mins(n, std::numeric_limits<double>::infinity());
    Vec maxs(n, -std::numeric_limits<double>::infinity());
    for (const MethodRun& run : runs) {
        for (const RowRecord& row : run.rows) {
            for (std::size_t i = 0; i < n; ++i) {
                mins[i] = std::min(mins[i], row.rewards[i]);
                maxs[i] = std::max(maxs[i], row.rewards[i]);
            }
        }
    }
    Vec ref(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double range = std::max(maxs[i] - mins[i], 1e-9);
        ref[i] = mins[i] - 0.1 * range;
    }
    return ref;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    SweepResult result;
    for (const MethodTag& method : config.methods) {
        result.runs.push_back(run_method(method, config));
    }
    result.hv_reference_used =
        config.hv_reference ? *config.hv_reference : auto_hv_reference(result.runs);
    for (const MethodRun& run : result.runs) {
        result.reports.emplace_back(run.name(),
                                    compute_metrics(run.front(), result.hv_reference_used));
    }
    result.config_echo = config_json(config).dump(2);
    return result;
}

std::string fronts_csv(const SweepResult& result) {
    if (result.runs.empty()) throw ConfigError("fronts_csv: empty sweep");
    const std::size_t n = result.runs.front().rows.front().preference.size();
    std::ostringstream out;
    out << "method,beta,alpha";
    for (std::size_t i = 0; i < n; ++i) out << ",pref_" << i;
    for (std::size_t i = 0; i < n; ++i) out << ",lambda_" << i;
    for (std::size_t i = 0; i < n; ++i) out << ",reward_" << i;
    out << "\n";
    for (const MethodRun& run : result.runs) {
        const auto [beta, alpha] = tag_beta_alpha(run.tag);
        for (const RowRecord& row : run.rows) {
            out << run.name() << "," << beta << "," << alpha;
            for (std::size_t i = 0; i < n; ++i) out << "," << fmt17(row.preference[i]);
            for (std::size_t i = 0; i < n; ++i) out << "," << fmt17(row.coefficients[i]);
            for (std::size_t i = 0; i < n; ++i) out << "," << fmt17(row.rewards[i]);
            out << "\n";
        }
    }
    return out.str();
}

std::string metrics_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "method,hypervolume,inner_product,controllability,front_length,sparsity,spacing\n";
    for (const auto& [name, report] : result.reports) {
        out << name << "," << fmt17(report.hypervolume) << "," << fmt17(report.inner_product)
            << "," << fmt17(report.controllability) << "," << report.front_length << ","
            << fmt17(report.sparsity) << "," << fmt17(report.spacing) << "\n";
    }
    return out.str();
}

std::string result_json(const SweepResult& result) {
    json j;
    j["tool_version"] = result.tool_version;
    j["hv_reference"] = result.hv_reference_used;
    j["config"] = json::parse(result.config_echo);
    json methods = json::array();
    for (std::size_t m = 0; m < result.runs.size(); ++m) {
        const MethodRun& run = result.runs[m];
        json jm;
        jm["name"] = run.name();
        const MetricsReport& report = result.reports[m].second;
        jm["metrics"] = {{"hypervolume", report.hypervolume},
                         {"inner_product", report.inner_product},
                         {"controllability", report.controllability},
                         {"front_length", report.front_length},
                         {"sparsity", report.sparsity},
                         {"spacing", report.spacing}};
        json rows = json::array();
        for (const RowRecord& row : run.rows) {
            rows.push_back({{"preference", row.preference.values()},
                            {"lambda", row.coefficients},
                            {"rewards", row.rewards}});
        }
        jm["rows"] = std::move(rows);
        methods.push_back(std::move(jm));
    }
    j["methods"] = std::move(methods);
    return j.dump(2) + "\n";
}

void emit_outputs(const SweepResult& result, const std::string& dir) {
    // Render everything first so a failure cannot leave partial files.
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("fronts.csv", fronts_csv(result));
    files.emplace_back("metrics.csv", metrics_csv(result));
    files.emplace_back("result.json", result_json(result));
    for (const MethodRun& run : result.runs) {
        const std::size_t n = run.rows.front().preference.size();
        std::vector<std::size_t> order(run.rows.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return run.rows[a].preference[0] < run.rows[b].preference[0];
        });
        std::ostringstream out;
        for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << "pref_" << i;
        for (std::size_t i = 0; i < n; ++i) out << ",reward_" << i;
        out << "\n";
        for (std::size_t idx : order) {
            const RowRecord& row = run.rows[idx];
            for (std::size_t i = 0; i < n; ++i) {
                out << (i ? "," : "") << fmt17(row.preference[i]);
            }
            for (std::size_t i = 0; i < n; ++i) out << "," << fmt17(row.rewards[i]);
            out << "\n";
        }
        files.emplace_back("plotdata/" + sanitize_filename(run.name()) + ".csv", out.str());
    }

    std::error_code ec;
    fs::create_directories(fs::path(dir) / "plotdata", ec);
    if (ec) {
        throw IoFailure("emit_outputs: cannot create output directory " + dir);
    }
    std::vector<fs::path> written;
    for (const auto& [name, content] : files) {
        const fs::path path = fs::path(dir) / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << content) || !out.flush()) {
            for (const fs::path& p : written) fs::remove(p, ec);
            throw IoFailure("emit_outputs: cannot write " + path.string());
        }
        written.push_back(path);
    }
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    require_keys(j,
                 {"world", "objectives", "methods", "grid", "trainer", "beta_candidates",
                  "alpha_candidates", "hv_reference", "validation_grid", "seed", "output_dir"},
                 "config");
    for (const char* key : {"world", "objectives", "methods", "grid"}) {
        if (!j.contains(key)) throw ConfigError(std::string("config needs '") + key + "'");
    }

    ExperimentConfig config;
    config.world = parse_world(j.at("world"));
    config.objectives = j.at("objectives").get<int>();
    for (const auto& m : j.at("methods")) config.methods.push_back(parse_method(m));
    config.grid = parse_grid(j.at("grid"), "grid");
    if (j.contains("trainer")) {
        const json& t = j.at("trainer");
        require_keys(t, {"eta", "steps", "learning_rate", "budget_fraction"}, "trainer");
        config.trainer.eta = t.value("eta", config.trainer.eta);
        config.trainer.steps = t.value("steps", config.trainer.steps);
        config.trainer.learning_rate = t.value("learning_rate", config.trainer.learning_rate);
        config.trainer.budget_fraction = t.value("budget_fraction", config.trainer.budget_fraction);
    }
    if (j.contains("beta_candidates")) {
        config.beta_candidates = parse_vec(j.at("beta_candidates"), "beta_candidates");
    }
    if (j.contains("alpha_candidates")) {
        config.alpha_candidates = parse_vec(j.at("alpha_candidates"), "alpha_candidates");
    }
    if (j.contains("hv_reference")) {
        const json& r = j.at("hv_reference");
        if (r.is_string()) {
            if (r.get<std::string>() != "auto") {
                throw ConfigError("hv_reference must be 'auto' or a vector");
            }
        } else {
            config.hv_reference = parse_vec(r, "hv_reference");
        }
    }
    if (j.contains("validation_grid")) {
        config.validation_grid = parse_grid(j.at("validation_grid"), "validation_grid");
    }
    if (j.contains("seed")) config.seed = j.at("seed").get<long>();
    if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open config file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<MethodRun> parse_fronts_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("fronts csv: empty file");
    }
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) header.push_back(cell);
    }
    // method,beta,alpha then pref_i, lambda_i, reward_i triplets
    if (header.size() < 9 || (header.size() - 3) % 3 != 0) {
        throw ConfigError("fronts csv: unexpected header");
    }
    const std::size_t n = (header.size() - 3) / 3;

    std::vector<MethodRun> runs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        // method names contain commas inside brackets; re-join such splits
        std::vector<std::string> fixed;
        for (const std::string& c : cells) {
            if (!fixed.empty()) {
                const std::string& prev = fixed.back();
                const long opens = std::count(prev.begin(), prev.end(), '[');
                const long closes = std::count(prev.begin(), prev.end(), ']');
                if (opens > closes) {
                    fixed.back() += "," + c;
                    continue;
                }
            }
            fixed.push_back(c);
        }
        if (fixed.size() != 3 + 3 * n) {
            throw ConfigError("fronts csv: bad row '" + line + "'");
        }
        const std::string& method = fixed[0];
        if (runs.empty() || runs.back().name() != method) {
            bool found = false;
            for (const MethodRun& r : runs) {
                if (r.name() == method) found = true;
            }
            if (found) throw ConfigError("fronts csv: method rows must be contiguous");
            MethodRun run{MethodTag::rewarded_soup(), {}, {}};
            runs.push_back(std::move(run));
            // keep only the display name; reconstructing full tags from text
            // is not needed for metric computation
            runs.back().display_name = method;
        }
        Vec pref(n), lambda(n), rewards(n);
        for (std::size_t i = 0; i < n; ++i) pref[i] = std::stod(fixed[3 + i]);
        for (std::size_t i = 0; i < n; ++i) lambda[i] = std::stod(fixed[3 + n + i]);
        for (std::size_t i = 0; i < n; ++i) rewards[i] = std::stod(fixed[3 + 2 * n + i]);
        runs.back().rows.push_back({make_preference(pref), lambda, rewards});
    }
    if (runs.empty()) throw ConfigError("fronts csv: no data rows");
    return runs;
}

}  // namespace bonesoup
