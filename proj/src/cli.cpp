#include "liouville/cli.hpp"

#include "liouville/expression.hpp"
#include "liouville/finite_graph.hpp"
#include "liouville/format.hpp"
#include "liouville/lattice.hpp"
#include "liouville/radial.hpp"
#include "liouville/report.hpp"
#include "liouville/supersolution.hpp"
#include "liouville/tree.hpp"
#include "liouville/verifier.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <type_traits>

namespace liouville::cli {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
    std::string what = "invalid configuration:";
    for (const auto& p : problems) what += "\n  - " + p;
    return what;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : SpecError(join_problems(problems)), problems_(std::move(problems)) {}

// ---------------------------------------------------------------------------
// Resolution

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"family", "input", "dim",   "degree", "sigma",   "epsilon", "n0",
                                            "delta",  "K",     "alpha", "r0",     "x0",      "s",       "v",
                                            "u",      "radii", "radius", "depth", "u0",      "bracket", "margin",
                                            "tol",    "workers", "budget", "out"};
    return keys;
}

const std::vector<std::string>& families() {
    static const std::vector<std::string> names{"lattice", "factorial-tree", "homogeneous-tree", "flat-tree", "file"};
    return names;
}

bool is_tree(const std::string& family) {
    return family == "factorial-tree" || family == "homogeneous-tree" || family == "flat-tree";
}

std::optional<double> parse_real(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
    return x;
}

std::optional<std::int64_t> parse_integer(std::string_view s) {
    std::int64_t x = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
    return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto at = s.find(sep, start);
        out.push_back(s.substr(start, at == std::string::npos ? std::string::npos : at - start));
        if (at == std::string::npos) return out;
        start = at + 1;
    }
}

class Reader {
public:
    Reader(const nlohmann::json& doc, std::vector<std::string>& problems) : doc_(doc), problems_(problems) {}

    bool has(const std::string& key) const { return doc_.contains(key) && !doc_.at(key).is_null(); }

    std::optional<double> real(const std::string& key) {
        if (!has(key)) return std::nullopt;
        const auto& x = doc_.at(key);
        if (x.is_number()) return x.get<double>();
        if (x.is_string())
            if (auto d = parse_real(x.get<std::string>())) return d;
        problems_.push_back(key + ": expected a number, got " + x.dump());
        return std::nullopt;
    }

    std::optional<std::int64_t> integer(const std::string& key) {
        if (!has(key)) return std::nullopt;
        const auto& x = doc_.at(key);
        if (x.is_number_integer()) return x.get<std::int64_t>();
        if (x.is_number_float() && x.get<double>() == std::floor(x.get<double>()) && std::abs(x.get<double>()) < 9e15)
            return static_cast<std::int64_t>(x.get<double>());
        if (x.is_string())
            if (auto i = parse_integer(x.get<std::string>())) return i;
        problems_.push_back(key + ": expected an integer, got " + x.dump());
        return std::nullopt;
    }

    std::optional<std::string> text(const std::string& key) {
        if (!has(key)) return std::nullopt;
        const auto& x = doc_.at(key);
        if (x.is_string()) return x.get<std::string>();
        problems_.push_back(key + ": expected a string, got " + x.dump());
        return std::nullopt;
    }

    /// A JSON array of numbers or a comma-separated string.
    std::optional<std::vector<double>> reals(const std::string& key) {
        if (!has(key)) return std::nullopt;
        const auto& x = doc_.at(key);
        std::vector<double> out;
        bool ok = true;
        if (x.is_array()) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i].is_number()) {
                    out.push_back(x[i].get<double>());
                } else {
                    problems_.push_back(key + "[" + std::to_string(i) + "]: expected a number, got " + x[i].dump());
                    ok = false;
                }
            }
        } else if (x.is_string()) {
            const auto parts = split(x.get<std::string>(), ',');
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (auto d = parse_real(parts[i])) {
                    out.push_back(*d);
                } else {
                    problems_.push_back(key + "[" + std::to_string(i) + "]: expected a number, got \"" + parts[i] +
                                        "\"");
                    ok = false;
                }
            }
        } else {
            problems_.push_back(key + ": expected a list of numbers, got " + x.dump());
            ok = false;
        }
        if (!ok) return std::nullopt;
        return out;
    }

private:
    const nlohmann::json& doc_;
    std::vector<std::string>& problems_;
};

/// "one", "table:<file>" or an expression.
void check_function_spec(const std::string& key, const std::string& spec, const std::string& family,
                         std::vector<std::string>& problems) {
    if (spec == "one") return;
    if (spec.starts_with("table:")) {
        if (family != "file") problems.push_back(key + ": table files are only available for family file");
        if (spec.size() == 6) problems.push_back(key + ": table file path is empty");
        return;
    }
    try {
        const auto e = Expression::parse(spec);
        if (e.coordinate_arity() > 0 && family != "lattice")
            problems.push_back(key + ": coordinates x1.. are only defined on the lattice");
        if (e.uses_level() && !is_tree(family)) problems.push_back(key + ": n is only defined on tree families");
    } catch (const SpecError& err) {
        problems.push_back(key + ": " + err.what());
    }
}

}  // namespace

RunConfig resolve_config(const std::string& subcommand, const nlohmann::json& file, const nlohmann::json& overrides,
                         const char* env_budget) {
    std::vector<std::string> problems;
    RunConfig c;
    c.subcommand = subcommand;
    const auto& subs = subcommands();
    if (std::find(subs.begin(), subs.end(), subcommand) == subs.end())
        problems.push_back("subcommand: unknown \"" + subcommand + "\"");

    nlohmann::json merged = nlohmann::json::object();
    if (!file.is_object() && !file.is_null()) problems.push_back("config: the config file must hold a JSON object");
    if (file.is_object()) merged = file;
    if (overrides.is_object())
        for (const auto& [key, value] : overrides.items()) merged[key] = value;
    for (const auto& [key, value] : merged.items())
        if (!known_keys().contains(key)) problems.push_back(key + ": unknown key");

    Reader r(merged, problems);
    const auto bad = [&](const std::string& key, const std::string& what) { problems.push_back(key + ": " + what); };

    if (auto f = r.text("family")) {
        if (std::find(families().begin(), families().end(), *f) == families().end())
            bad("family", "must be one of lattice, factorial-tree, homogeneous-tree, flat-tree, file; got \"" + *f +
                              "\"");
        else
            c.family = *f;
    }
    if (auto s = r.text("input")) c.input = *s;
    if (auto d = r.integer("dim")) {
        if (*d < 1 || *d > kMaxLatticeDim) bad("dim", "must lie in [1, " + std::to_string(kMaxLatticeDim) + "]");
        else c.dim = static_cast<int>(*d);
    }
    if (auto d = r.integer("degree")) {
        if (*d < 3 || *d > 1'000'000) bad("degree", "must lie in [3, 1000000]");
        else c.degree = static_cast<int>(*d);
    }
    if (auto x = r.real("sigma")) {
        if (!(*x > 1.0) || !std::isfinite(*x)) bad("sigma", "must be a finite number > 1");
        else c.sigma = *x;
    }
    if (auto x = r.real("epsilon")) {
        if (!(*x > 0.0) || !std::isfinite(*x)) bad("epsilon", "must be a finite number > 0");
        else c.epsilon = *x;
    }
    if (auto n = r.integer("n0")) {
        if (*n < 1) bad("n0", "must be >= 1");
        else c.n0 = *n;
    }
    if (auto x = r.real("delta")) {
        if (!(*x > 0.0)) bad("delta", "must be > 0");
        else c.delta = *x;
    }
    if (auto x = r.real("K")) {
        if (!(*x > 0.0)) bad("K", "must be > 0");
        else c.K = *x;
    }
    if (auto x = r.real("alpha")) {
        if (!(*x >= 0.0 && *x <= 1.0)) bad("alpha", "must lie in [0, 1]");
        else c.alpha = *x;
    }
    if (auto x = r.real("r0")) {
        if (!(*x > 1.0)) bad("r0", "must exceed 1");
        else c.r0 = *x;
    }
    if (auto s = r.text("x0")) c.x0 = *s;
    if (auto x = r.real("s")) {
        if (!(*x >= 0.0)) bad("s", "must be 0 (default 2 sigma/(sigma-1)) or exceed sigma/(sigma-1)");
        else c.s = *x;
    }
    if (c.s != 0.0 && !(c.s > c.sigma / (c.sigma - 1.0)))
        bad("s", "must exceed sigma/(sigma-1) = " + format_number(c.sigma / (c.sigma - 1.0)));
    if (auto s = r.text("v")) c.v = *s;
    if (auto s = r.text("u")) c.u = *s;
    if (auto list = r.reals("radii")) {
        bool ok = !list->empty();
        if (!ok) bad("radii", "must not be empty");
        for (std::size_t i = 0; i < list->size(); ++i) {
            if (!((*list)[i] > 0.0) || !std::isfinite((*list)[i])) {
                bad("radii[" + std::to_string(i) + "]", "must be a finite number > 0");
                ok = false;
            } else if (i > 0 && !((*list)[i] > (*list)[i - 1])) {
                bad("radii[" + std::to_string(i) + "]", "radii must be strictly increasing");
                ok = false;
            }
        }
        if (ok) c.radii = *list;
    }
    if (auto x = r.real("radius")) {
        if (!(*x >= 0.0) || !std::isfinite(*x)) bad("radius", "must be a finite number >= 0");
        else c.radius = *x;
    }
    if (auto n = r.integer("depth")) {
        if (*n < 1 || *n > 100'000'000) bad("depth", "must lie in [1, 100000000]");
        else c.depth = *n;
    }
    if (auto x = r.real("u0")) {
        if (!(*x > 0.0)) bad("u0", "must be > 0");
        else c.u0 = *x;
    }
    if (auto list = r.reals("bracket")) {
        if (list->size() != 2) bad("bracket", "needs exactly two numbers lower,upper");
        else if (!((*list)[0] > 0.0 && (*list)[1] > (*list)[0])) bad("bracket", "needs 0 < lower < upper");
        else c.bracket = std::array<double, 2>{(*list)[0], (*list)[1]};
    }
    if (auto x = r.real("margin")) {
        if (!(*x >= 0.0) || !std::isfinite(*x)) bad("margin", "must be a finite number >= 0");
        else c.margin = *x;
    }
    if (auto x = r.real("tol")) {
        if (!(*x >= 0.0) || !std::isfinite(*x)) bad("tol", "must be a finite number >= 0");
        else c.tol = *x;
    }
    if (auto n = r.integer("workers")) {
        if (*n < 1 || *n > 1024) bad("workers", "must lie in [1, 1024]");
        else c.workers = static_cast<unsigned>(*n);
    }
    if (auto n = r.integer("budget")) {
        if (*n < 1) bad("budget", "must be >= 1");
        else c.budget = static_cast<std::size_t>(*n);
    } else if (!r.has("budget") && env_budget != nullptr && *env_budget != '\0') {
        const auto n = parse_integer(env_budget);
        if (!n || *n < 1) bad(kBudgetVariable, std::string("must be a positive integer, got \"") + env_budget + "\"");
        else c.budget = static_cast<std::size_t>(*n);
    }
    if (auto s = r.text("out")) {
        if (s->empty()) bad("out", "must not be empty");
        else c.out = *s;
    }

    // Cross-field rules.
    const std::string& fam = c.family;
    const std::string& sub = c.subcommand;
    if (fam == "file" && c.input.empty()) bad("input", "family file needs a graph JSON path");
    if (fam != "file" && !c.input.empty()) bad("input", "only used with family file");
    if (fam == "lattice" && !c.x0.empty()) {
        const auto parts = split(c.x0, ',');
        bool ok = static_cast<int>(parts.size()) == c.dim;
        for (const auto& p : parts) ok = ok && parse_integer(p).has_value();
        if (!ok) bad("x0", "needs " + std::to_string(c.dim) + " comma-separated integers for Z^" + std::to_string(c.dim));
    }
    if (is_tree(fam) && !c.x0.empty() && c.x0 != "root")
        bad("x0", "tree families run on the radial quotient and are anchored at the root");
    if (c.K && fam != "lattice") bad("K", "only used with family lattice");
    if (c.K.has_value() != (c.delta.has_value() && fam == "lattice"))
        bad(c.K ? "delta" : "K", "lattice parameters delta and K are given together or not at all");
    if (c.n0 && fam != "homogeneous-tree") bad("n0", "only used with family homogeneous-tree");
    if (fam == "homogeneous-tree" && c.n0.has_value() != c.delta.has_value())
        bad(c.n0 ? "delta" : "n0", "tree parameters n0 and delta are given together or not at all (neither: tuned)");
    if (c.delta && fam != "lattice" && fam != "homogeneous-tree") bad("delta", "only used with the explicit families");
    if (sub == "tune" && fam != "lattice" && fam != "homogeneous-tree")
        bad("family", "tune supports lattice and homogeneous-tree");
    if (sub == "tune" && (c.delta || c.K || c.n0)) bad("delta", "tune derives the parameters; do not set them");
    if (sub == "shoot" && !is_tree(fam)) bad("family", "shoot runs on tree families");
    if (sub != "shoot" && c.bracket) bad("bracket", "only used with shoot");
    if ((sub == "certificate" || sub == "max-principle") && !c.u) bad("u", sub + " needs a candidate function");
    if (sub == "verify-supersolution" && !c.u && fam != "lattice" && fam != "homogeneous-tree")
        bad("u", "family " + fam + " has no built-in supersolution; give a candidate function");
    if ((sub == "check-hypotheses" || sub == "volume-growth") && c.radii.size() < 4)
        bad("radii", "the volume-growth slope needs at least 4 radii");
    check_function_spec("v", c.v, fam, problems);
    if (c.u) check_function_spec("u", *c.u, fam, problems);

    // Defaults that depend on the subcommand and family.
    if (!c.radius) {
        if (sub == "build-info" && fam != "file") c.radius = 4.0;
        else if (fam == "lattice" && (sub == "verify-supersolution" || sub == "tune")) c.radius = 50.0;
        else if (fam == "lattice" && sub == "max-principle") c.radius = 10.0;
    }
    if (c.out.empty()) c.out = subcommand + ".json";

    if (!problems.empty()) throw ConfigError(std::move(problems));
    return c;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
    using Json = nlohmann::ordered_json;
    const auto opt = [](const auto& x) { return x ? Json(*x) : Json(nullptr); };
    Json j;
    j["family"] = c.family;
    j["input"] = c.input.empty() ? Json(nullptr) : Json(c.input);
    j["dim"] = c.dim;
    j["degree"] = c.degree;
    j["sigma"] = c.sigma;
    j["epsilon"] = c.epsilon;
    j["n0"] = opt(c.n0);
    j["delta"] = opt(c.delta);
    j["K"] = opt(c.K);
    j["alpha"] = c.alpha;
    j["r0"] = c.r0;
    j["x0"] = c.x0;
    j["s"] = c.s;
    j["v"] = c.v;
    j["u"] = opt(c.u);
    j["radii"] = c.radii;
    j["radius"] = opt(c.radius);
    j["depth"] = c.depth;
    j["u0"] = opt(c.u0);
    j["bracket"] = c.bracket ? Json(*c.bracket) : Json(nullptr);
    j["margin"] = c.margin;
    j["tol"] = c.tol;
    j["workers"] = c.workers;
    j["budget"] = c.budget;
    j["out"] = c.out;
    return j;
}

// ---------------------------------------------------------------------------
// Families

namespace {

using Coordinates = std::array<double, kMaxLatticeDim>;

template <class G, class M>
struct View {
    using V = vertex_t<G>;
    const G& graph;
    const M& metric;
    V base;
    double jump = 1.0;
    std::optional<double> analytic_jump;
    bool levels = false;  // a tree's radial quotient
    Json description;
    std::function<ExpressionInputs(const V&, Coordinates&)> inputs;
    std::optional<TreeSupersolution> tree_solution;
    const TreeTuning* tuning = nullptr;
};

struct Outcome {
    int exit_code = kExitPass;
    std::string verdict;
    Json result;
    std::optional<std::string> csv;
};

template <class G, class M>
VertexFunction<vertex_t<G>> make_function(const View<G, M>& view, const std::string& spec) {
    using V = vertex_t<G>;
    if (spec == "one") return constant_function<V>(1.0);
    if (spec.starts_with("table:")) {
        if constexpr (std::is_same_v<G, FiniteGraph>) {
            const std::string path = spec.substr(6);
            std::ifstream in(path);
            if (!in) throw SpecError("cannot open table file " + path);
            const auto doc = nlohmann::json::parse(in, nullptr, false);
            if (!doc.is_object()) throw SpecError("table file " + path + " must hold an object {\"id\": value}");
            std::map<V, double> values;
            for (const auto& [id, value] : doc.items()) {
                const auto x = view.graph.find(id);
                if (!x) throw SpecError("table file " + path + " names unknown vertex \"" + id + "\"");
                if (!value.is_number()) throw SpecError("table file " + path + ": value of \"" + id + "\" is not a number");
                values[*x] = value.template get<double>();
            }
            return TableFunction<V>(std::move(values), TableFunction<V>::Outside::undefined).as_vertex_function();
        } else {
            throw SpecError("table files are only available for family file");
        }
    }
    const auto e = Expression::parse(spec);
    auto inputs = view.inputs;
    return {[e, inputs](const V& x) {
                Coordinates buffer{};
                return e.evaluate(inputs(x, buffer));
            },
            std::nullopt};
}

template <class G, class M>
ProblemSpec<G, M> problem(const View<G, M>& view, const RunConfig& c, VertexFunction<vertex_t<G>> v) {
    return {.graph = view.graph,
            .metric = view.metric,
            .base = view.base,
            .potential = std::move(v),
            .sigma = c.sigma,
            .alpha = c.alpha,
            .r0 = c.r0,
            .s = c.s,
            .jump = view.jump,
            .margin = c.margin,
            .workers = c.workers,
            .budget = c.budget};
}

/// B_radius(x0) when a radius is set; otherwise the quotient levels
/// 0..depth, or every vertex of a file graph.
template <class G, class M>
std::pair<std::vector<vertex_t<G>>, std::string> scan_region(const View<G, M>& view, const RunConfig& c) {
    using V = vertex_t<G>;
    if (c.radius) {
        auto b = ball(view.graph, view.metric, view.base, *c.radius, c.margin, c.budget);
        std::string label = "B_" + format_number(*c.radius) + "(" + to_string(view.base) + "), margin " +
                            format_number(c.margin) + ", " + std::to_string(b.size()) + " vertices";
        return {std::move(b.vertices), std::move(label)};
    }
    if constexpr (std::is_same_v<G, RadialQuotient>) {
        std::vector<V> levels;
        levels.reserve(static_cast<std::size_t>(c.depth) + 1);
        for (std::int64_t n = 0; n <= c.depth; ++n) levels.push_back({n});
        return {std::move(levels), "levels 0.." + std::to_string(c.depth) + " of " + view.graph.label() +
                                       " (radial quotient)"};
    } else if constexpr (std::is_same_v<G, FiniteGraph>) {
        return {view.graph.vertices(), "all " + std::to_string(view.graph.size()) + " vertices of " + c.input};
    } else {
        throw ContractError("scan region needs a radius");
    }
}

std::string scan_verdict(bool pass, const std::string& region) {
    return (pass ? "residual <= 0 within tolerance on " : "residual exceeds tolerance on ") + region;
}

// ---------------------------------------------------------------------------
// Subcommands

template <class G, class M>
Outcome build_info(const View<G, M>& view, const RunConfig& c) {
    using V = vertex_t<G>;
    Outcome o;
    Json& r = o.result;
    r["base"] = to_string(view.base);
    r["measure_at_base"] = view.graph.measure(view.base);
    std::size_t degree = 0;
    double weight = 0.0;
    view.graph.for_each_neighbor(view.base, [&](const V&, double w) {
        ++degree;
        weight += w;
    });
    r["degree_at_base"] = degree;
    r["weight_sum_at_base"] = weight;

    const auto [region, label] = scan_region(view, c);
    const std::span<const V> span(region);
    const auto jump = jump_size(view.graph, view.metric, span, view.analytic_jump);
    Json probe;
    probe["region"] = label;
    probe["size"] = region.size();
    probe["volume"] = volume(view.graph, span);
    probe["jump_explored"] = jump.explored_sup;
    probe["jump_analytic"] = jump.analytic ? Json(*jump.analytic) : Json(nullptr);
    probe["row_sum_bound"] = check_row_sum_bound(view.graph, span);
    r["probe"] = std::move(probe);
    o.verdict = "built";
    return o;
}

template <class G, class M>
Outcome check(const View<G, M>& view, const RunConfig& c) {
    const auto spec = problem(view, c, make_function(view, c.v));
    HypothesisOptions options;
    options.analytic_jump = view.analytic_jump;
    options.volume = {c.margin, 0.1, 1.05, c.workers, c.budget};
    const auto report = check_hypotheses(spec, c.radii, options);
    Outcome o;
    o.result = to_json(report);
    if (report.volume_growth) o.csv = report.volume_growth->csv();
    o.exit_code = report.theorem_applies ? kExitPass : kExitNegative;
    o.verdict = report.theorem_applies ? "theorem applies on the explored region (finite-region evidence)"
                                       : "hypotheses not established on the explored region";
    return o;
}

template <class G, class M>
Outcome growth(const View<G, M>& view, const RunConfig& c) {
    const auto v = make_function(view, c.v);
    const VolumeGrowthOptions options{c.margin, 0.1, 1.05, c.workers, c.budget};
    const auto report = volume_growth_report(view.graph, view.metric, view.base, v, c.sigma, c.alpha, c.radii, options);
    Outcome o;
    o.result = to_json(report);
    o.csv = report.csv();
    o.exit_code = report.consistent ? kExitPass : kExitNegative;
    o.verdict = report.consistent ? "volume growth consistent with the target exponent"
                                  : "volume growth exceeds the target exponent";
    return o;
}

Outcome rejected(const std::string& reason) {
    Outcome o;
    o.exit_code = kExitNegative;
    o.verdict = "rejected: " + reason;
    o.result = {{"rejected", true}, {"reason", reason}};
    return o;
}

template <class G, class M>
Outcome verify(const View<G, M>& view, const RunConfig& c) {
    using V = vertex_t<G>;
    const auto v = make_function(view, c.v);
    const ScanOptions options{ToleranceRule{c.tol, view.levels ? 0.0 : 1.0}, c.workers, false};
    Json params;
    std::function<double(const V&)> u;
    std::optional<StencilSpotCheck> spot;

    if (c.u) {
        u = make_function(view, *c.u);
        params = {{"u", *c.u}};
    } else if constexpr (std::is_same_v<G, LatticeGraph>) {
        try {
            LatticeSupersolution member;
            if (c.delta && c.K) {
                member = make_lattice_supersolution(c.dim, c.sigma, *c.delta, *c.K);
                params = to_json(member);
                params["source"] = "config";
            } else {
                LatticeTuningOptions t;
                t.margin = c.margin;
                t.budget = c.budget;
                t.scan = options;
                member = tune_lattice_parameters(c.dim, c.sigma, *c.radius, t).solution;
                params = to_json(member);
                params["source"] = "tuned";
            }
            u = member;
        } catch (const SubcriticalError& e) {
            return rejected(e.what());
        } catch (const TuningError& e) {
            return rejected(e.what());
        }
    } else if constexpr (std::is_same_v<G, RadialQuotient>) {
        if (!view.tree_solution) throw ContractError("no built-in supersolution for " + c.family);
        u = *view.tree_solution;
        params = to_json(*view.tree_solution);
        params["source"] = view.tuning ? "tuned" : "config";
        spot = spot_check_tree_stencil(*view.tree_solution, c.degree, 100,
                                       std::min<std::int64_t>(c.depth, 1000), 1, 1e-12);
    }

    const auto [region, label] = scan_region(view, c);
    const auto scan = verify_supersolution(view.graph, u, v, c.sigma, std::span<const V>(region), label, options);
    Outcome o;
    Json s = to_json(scan);
    s["params"] = params;
    o.result["scan"] = std::move(s);
    const bool agree = !spot || spot->agree;
    if (spot) o.result["stencil_spot_check"] = to_json(*spot);
    o.exit_code = scan.pass && agree ? kExitPass : kExitNegative;
    o.verdict = scan_verdict(scan.pass, scan.region);
    if (!agree) o.verdict += "; full-stencil spot checks disagree with the level residual";
    return o;
}

template <class G, class M>
Outcome tune(const View<G, M>& view, const RunConfig& c) {
    Outcome o;
    if constexpr (std::is_same_v<G, LatticeGraph>) {
        LatticeTuningOptions t;
        t.margin = c.margin;
        t.budget = c.budget;
        t.scan = {ToleranceRule{c.tol, 1.0}, c.workers, false};
        try {
            const auto tuned = tune_lattice_parameters(c.dim, c.sigma, *c.radius, t);
            o.result = to_json(tuned);
            o.verdict = "tuned: delta = " + format_number(tuned.solution.delta) +
                        ", K = " + format_number(tuned.solution.shift);
        } catch (const SubcriticalError& e) {
            return rejected(e.what());
        } catch (const TuningError& e) {
            return rejected(e.what());
        }
    } else if constexpr (std::is_same_v<G, RadialQuotient>) {
        if (!view.tuning) throw ContractError("tune needs family homogeneous-tree");
        o.result = to_json(*view.tuning);
        o.verdict = "tuned: n0 = " + std::to_string(view.tuning->solution.offset) +
                    ", delta = " + format_number(view.tuning->solution.delta);
    } else {
        throw ContractError("tune supports lattice and homogeneous-tree");
    }
    return o;
}

template <class G, class M>
Outcome certificate(const View<G, M>& view, const RunConfig& c) {
    const auto spec = problem(view, c, make_function(view, c.v));
    const auto u = make_function(view, *c.u);
    const auto cert = capacity_certificate(spec, u, c.radii);
    Outcome o;
    o.result = to_json(cert);
    o.csv = cert.csv();
    o.exit_code = cert.consistent ? kExitPass : kExitNegative;
    o.verdict = cert.verdict;
    return o;
}

template <class G, class M>
Outcome shoot_profile(const View<G, M>& view, const RunConfig& c) {
    if constexpr (std::is_same_v<G, RadialQuotient>) {
        Outcome o;
        double u0 = 1.0;
        std::string source = "default";
        if (c.u0) {
            u0 = *c.u0;
            source = "config";
        } else if (view.tree_solution) {
            u0 = view.tree_solution->level_value(0);
            source = view.tuning ? "tuned supersolution at the root" : "supersolution at the root";
        }
        const auto profile = shoot(view.graph, c.sigma, u0, c.depth);
        o.result["u0_source"] = source;
        o.result["profile"] = to_json(profile, false);
        o.csv = profile.csv();
        std::optional<double> threshold;
        if (c.bracket) {
            const auto t = bisect_positive_threshold(view.graph, c.sigma, c.depth, (*c.bracket)[0], (*c.bracket)[1],
                                                     c.workers);
            o.result["threshold"] = to_json(t);
            threshold = t.threshold;
        }
        switch (profile.stop) {
            case StopReason::max_depth: o.verdict = "positive through depth " + std::to_string(c.depth); break;
            case StopReason::crossed_zero:
                o.verdict = "crossed zero at level " + std::to_string(profile.last_level());
                break;
            case StopReason::blow_up: o.verdict = "blew up at level " + std::to_string(profile.last_level()); break;
        }
        if (threshold) o.verdict += "; largest positive start to depth " + std::to_string(c.depth) + " ~ " +
                                    format_number(*threshold);
        return o;
    } else {
        (void)view;
        (void)c;
        throw ContractError("shoot runs on tree families");
    }
}

template <class G, class M>
Outcome max_principle(const View<G, M>& view, const RunConfig& c) {
    using V = vertex_t<G>;
    const auto u = make_function(view, *c.u);
    const auto [region, label] = scan_region(view, c);
    const auto verdict = strong_maximum_principle_check(view.graph, u, std::span<const V>(region),
                                                        ToleranceRule{c.tol, 1.0});
    Outcome o;
    o.result = to_json(verdict);
    o.result["region"] = label;
    o.exit_code = verdict.kind == MaximumPrincipleKind::violation ? kExitNegative : kExitPass;
    o.verdict = to_string(verdict.kind);
    return o;
}

template <class G, class M>
Outcome dispatch(const View<G, M>& view, const RunConfig& c) {
    const auto& s = c.subcommand;
    if (s == "build-info") return build_info(view, c);
    if (s == "check-hypotheses") return check(view, c);
    if (s == "volume-growth") return growth(view, c);
    if (s == "verify-supersolution") return verify(view, c);
    if (s == "tune") return tune(view, c);
    if (s == "certificate") return certificate(view, c);
    if (s == "shoot") return shoot_profile(view, c);
    if (s == "max-principle") return max_principle(view, c);
    throw ContractError("unknown subcommand " + s);
}

Json report_header(const RunConfig& c) {
    Json j;
    j["tool"] = "graph-liouville";
    j["version"] = GRAPH_LIOUVILLE_VERSION;
    j["subcommand"] = c.subcommand;
    j["config"] = to_json(c);
    return j;
}

RunResult finish(const RunConfig& c, Json description, Outcome o) {
    RunResult r;
    r.exit_code = o.exit_code;
    r.verdict = o.verdict;
    r.csv = std::move(o.csv);
    r.report = report_header(c);
    r.report["family"] = std::move(description);
    r.report["verdict"] = o.verdict;
    r.report["exit_code"] = o.exit_code;
    r.report["result"] = std::move(o.result);
    return r;
}

template <class G, class M>
RunResult run_on(const View<G, M>& view, const RunConfig& c) {
    return finish(c, view.description, dispatch(view, c));
}

ExpressionInputs level_inputs(const Level& x, Coordinates&) {
    ExpressionInputs in;
    in.r = static_cast<double>(x.n);
    in.r2 = in.r * in.r;
    in.n = in.r;
    in.has_r = in.has_n = true;
    return in;
}

RunResult run_tree(const RunConfig& c) {
    const LevelMetric metric;
    Json d;
    d["name"] = c.family;
    d["representation"] = "radial quotient";
    d["metric"] = metric.kind();

    if (c.family == "factorial-tree") {
        const auto family = build_factorial_tree({kMaxFactorialDepth});
        d["quotient"] = family.quotient.label();
        View<RadialQuotient, LevelMetric> view{family.quotient, metric, Level{0}, 1.0, 1.0, true, d, level_inputs, {}, nullptr};
        return run_on(view, c);
    }
    if (c.family == "flat-tree") {
        const auto quotient = flat_homogeneous_quotient(c.degree);
        d["degree"] = c.degree;
        d["quotient"] = quotient.label();
        View<RadialQuotient, LevelMetric> view{quotient, metric, Level{0}, 1.0, 1.0, true, d, level_inputs, {}, nullptr};
        return run_on(view, c);
    }

    std::optional<TreeTuning> tuning;
    std::optional<TreeSupersolution> solution;
    std::int64_t n0 = 0;
    if (!c.n0) {
        TreeTuningOptions t;
        t.check_depth = c.depth;
        t.scan.workers = c.workers;
        t.scan.tolerance = ToleranceRule{c.tol, 0.0};
        try {
            tuning = tune_tree_parameters(c.degree, c.sigma, c.epsilon, t);
        } catch (const TuningError& e) {
            if (c.subcommand != "tune") throw;
            return finish(c, d, rejected(e.what()));
        }
        n0 = tuning->solution.offset;
        solution = tuning->solution;
    } else {
        n0 = *c.n0;
    }
    const HomogeneousTreeSpec spec{c.degree, c.sigma, c.epsilon, n0, 0};
    if (c.n0) solution = make_tree_supersolution(spec, c.sigma, c.epsilon, n0, *c.delta);
    const auto family = build_homogeneous_tree(spec);
    d["degree"] = c.degree;
    d["sigma"] = c.sigma;
    d["epsilon"] = c.epsilon;
    d["n0"] = n0;
    d["n0_source"] = tuning ? "tuned" : "config";
    d["weight_exponent"] = spec.weight_exponent();
    d["quotient"] = family.quotient.label();
    View<RadialQuotient, LevelMetric> view{family.quotient, metric, Level{0}, 1.0, 1.0, true, d, level_inputs, {}, nullptr};
    view.tree_solution = solution;
    view.tuning = tuning ? &*tuning : nullptr;
    return run_on(view, c);
}

RunResult run_lattice(const RunConfig& c) {
    const auto family = build_lattice({c.dim});
    LatticePoint base = family.graph.origin();
    if (!c.x0.empty()) {
        const auto parts = split(c.x0, ',');
        for (int i = 0; i < c.dim; ++i) base[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(*parse_integer(parts[i]));
    }
    Json d;
    d["name"] = "lattice";
    d["dim"] = c.dim;
    d["metric"] = family.metric.kind();
    d["analytic_jump"] = family.analytic_jump_size;
    const int dim = c.dim;
    const auto inputs = [dim, base](const LatticePoint& x, Coordinates& buffer) {
        ExpressionInputs in;
        std::int64_t r2 = 0;
        for (int i = 0; i < dim; ++i) {
            buffer[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
            const std::int64_t t = std::int64_t{x[static_cast<std::size_t>(i)]} - base[static_cast<std::size_t>(i)];
            r2 += t * t;
        }
        in.coordinates = std::span<const double>(buffer.data(), static_cast<std::size_t>(dim));
        in.r2 = static_cast<double>(r2);
        in.r = std::sqrt(in.r2);
        in.has_r = true;
        return in;
    };
    View<LatticeGraph, EuclideanMetric> view{family.graph, family.metric, base, family.analytic_jump_size,
                                             family.analytic_jump_size, false, d, inputs, {}, nullptr};
    return run_on(view, c);
}

RunResult run_file(const RunConfig& c) {
    const auto family = load_graph_json(c.input);
    if (family.graph.size() == 0) throw SpecError("input: graph has no vertices");
    FiniteVertex base = family.graph.vertex(0);
    if (!c.x0.empty()) {
        const auto found = family.graph.find(c.x0);
        if (!found) throw SpecError("x0: no vertex \"" + c.x0 + "\" in " + c.input);
        base = *found;
    }
    const auto all = family.graph.vertices();
    const double explored = jump_size(family.graph, family.metric, std::span<const FiniteVertex>(all)).explored_sup;
    Json d;
    d["name"] = "file";
    d["input"] = c.input;
    d["vertices"] = family.graph.size();
    d["edges"] = family.graph.edge_count();
    d["metric"] = family.metric.kind();
    d["jump"] = explored;
    const FiniteMetric& metric = family.metric;
    const auto inputs = [&metric, base](const FiniteVertex& x, Coordinates&) {
        ExpressionInputs in;
        in.r = metric.distance(x, base);
        in.r2 = in.r * in.r;
        in.has_r = true;
        return in;
    };
    // A metric vanishing on every edge has no jump; the proof's annuli then
    // degenerate to balls, and 1 keeps R >= max{R0, j} meaningful.
    View<FiniteGraph, FiniteMetric> view{family.graph, family.metric, base, explored > 0.0 ? explored : 1.0,
                                         std::nullopt, false, d, inputs, {}, nullptr};
    return run_on(view, c);
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const BudgetExceededError*>(&e)) return "budget-exceeded";
    if (dynamic_cast<const LoadError*>(&e)) return "load";
    if (dynamic_cast<const BracketError*>(&e)) return "bracket";
    if (dynamic_cast<const EvaluationError*>(&e)) return "evaluation";
    if (dynamic_cast<const StencilIncompleteError*>(&e)) return "stencil-incomplete";
    if (dynamic_cast<const SpecError*>(&e)) return "spec";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const ContractError*>(&e)) return "contract";
    if (dynamic_cast<const nlohmann::json::exception*>(&e)) return "json";
    return "error";
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

std::filesystem::path sibling(const std::filesystem::path& report, const std::string& extension) {
    auto p = report;
    return p.replace_extension(extension);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_outputs(const std::filesystem::path& report_path, const RunResult& r) {
    if (report_path.has_parent_path()) std::filesystem::create_directories(report_path.parent_path());
    write_file(report_path, r.report.dump(2) + "\n");
    if (r.csv) write_file(sibling(report_path, ".csv"), *r.csv);
    nlohmann::ordered_json meta;
    meta["report"] = report_path.filename().string();
    meta["generated_at"] = utc_timestamp();
    meta["exit_code"] = r.exit_code;
    write_file(sibling(report_path, ".meta.json"), meta.dump(2) + "\n");
}

RunResult error_result(const RunConfig& c, const std::exception& e) {
    RunResult r;
    r.exit_code = kExitError;
    r.verdict = std::string("error: ") + e.what();
    r.report = report_header(c);
    r.report["verdict"] = "error";
    r.report["exit_code"] = kExitError;
    r.report["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
    return r;
}

}  // namespace

RunResult execute(const RunConfig& c) {
    if (c.family == "lattice") return run_lattice(c);
    if (c.family == "file") return run_file(c);
    return run_tree(c);
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    RunResult r;
    try {
        r = execute(c);
    } catch (const std::exception& e) {
        r = error_result(c, e);
    }
    try {
        write_outputs(c.out, r);
    } catch (const std::exception& e) {
        err << "graph-liouville: " << e.what() << '\n';
        return kExitError;
    }
    if (r.exit_code == kExitError) err << "graph-liouville: " << c.subcommand << ": " << r.verdict << '\n';
    out << c.subcommand << ": " << r.verdict << " (exit " << r.exit_code << ")\n";
    out << "  report: " << c.out << '\n';
    if (r.csv) out << "  table:  " << sibling(c.out, ".csv").string() << '\n';
    return r.exit_code;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-region experiments for semilinear inequalities on weighted graphs", "graph-liouville"};
    app.set_version_flag("--version", GRAPH_LIOUVILLE_VERSION);
    app.require_subcommand(1, 1);

    struct Flag {
        const char* name;
        const char* help;
    };
    static const Flag flags[] = {
        {"family", "lattice | factorial-tree | homogeneous-tree | flat-tree | file"},
        {"input", "graph JSON for family file"},
        {"dim", "lattice dimension N"},
        {"degree", "homogeneous tree degree N"},
        {"sigma", "exponent sigma > 1"},
        {"epsilon", "homogeneous tree weight excess epsilon > 0"},
        {"n0", "homogeneous tree offset (with --delta; tuned when both are absent)"},
        {"delta", "supersolution amplitude"},
        {"K", "lattice supersolution shift"},
        {"alpha", "distance-Laplacian decay alpha in [0, 1]"},
        {"r0", "smallest radius R0 > 1"},
        {"x0", "base vertex: lattice coordinates a,b,c or a file vertex id"},
        {"s", "cutoff power (default 2 sigma/(sigma-1))"},
        {"v", "potential: one | expression | table:<file>"},
        {"u", "candidate function: expression | table:<file>"},
        {"radii", "comma-separated radii"},
        {"radius", "scan region radius"},
        {"depth", "tree level range"},
        {"u0", "initial value for shoot"},
        {"bracket", "lower,upper initial values for the shoot threshold search"},
        {"margin", "ball enumeration margin"},
        {"tol", "relative residual tolerance"},
        {"workers", "worker threads"},
        {"budget", "vertex enumeration budget"},
        {"out", "JSON report path (CSV and .meta.json are written next to it)"},
    };
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    for (const auto& f : flags) options.emplace_back(f.name, app.add_option(std::string("--") + f.name, values[f.name], f.help));
    std::string config_path;
    app.add_option("--config", config_path, "JSON config; flags override its keys");

    static const std::pair<const char*, const char*> commands[] = {
        {"build-info", "describe a family and probe a small ball"},
        {"check-hypotheses", "check the structural assumptions and volume growth"},
        {"volume-growth", "weighted annulus masses and their log-log slope"},
        {"verify-supersolution", "pointwise residual scan of a supersolution"},
        {"tune", "tune the explicit supersolution's parameters"},
        {"certificate", "capacity-argument sweep for a candidate function"},
        {"shoot", "march the radial equality relation on a tree"},
        {"max-principle", "strong maximum principle check for a candidate"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitPass : kExitError;
    }
    const std::string subcommand = app.get_subcommands().front()->get_name();

    nlohmann::json overrides = nlohmann::json::object();
    for (const auto& [name, option] : options)
        if (option->count() > 0) overrides[name] = values[name];

    nlohmann::json file = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            err << "graph-liouville: config: cannot open " << config_path << '\n';
            return kExitError;
        }
        file = nlohmann::json::parse(in, nullptr, false);
        if (file.is_discarded()) {
            err << "graph-liouville: config: " << config_path << " is not valid JSON\n";
            return kExitError;
        }
    }

    RunConfig config;
    try {
        config = resolve_config(subcommand, file, overrides, std::getenv(kBudgetVariable));
    } catch (const ConfigError& e) {
        err << "graph-liouville: " << e.what() << '\n';
        // Still leave a report behind when the destination itself is usable.
        std::string destination = subcommand + ".json";
        if (overrides.contains("out")) destination = overrides["out"].get<std::string>();
        else if (file.is_object() && file.contains("out") && file["out"].is_string()) destination = file["out"];
        if (!destination.empty()) {
            RunResult r;
            r.exit_code = kExitError;
            r.report["tool"] = "graph-liouville";
            r.report["version"] = GRAPH_LIOUVILLE_VERSION;
            r.report["subcommand"] = subcommand;
            r.report["verdict"] = "error";
            r.report["exit_code"] = kExitError;
            r.report["error"] = {{"kind", "config"}, {"problems", e.problems()}};
            try {
                write_outputs(destination, r);
            } catch (const std::exception&) {
            }
        }
        return kExitError;
    }
    return run(config, out, err);
}

}  // namespace liouville::cli
