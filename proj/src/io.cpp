#include "svi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace svi::io {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::prefix() {
    if (stack_.empty()) return;
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (stack_.back().second > 0) out_ += ',';
    ++stack_.back().second;
}

void JsonWriter::begin_object() {
    prefix();
    out_ += '{';
    stack_.push_back({'o', 0});
}

void JsonWriter::end_object() {
    out_ += '}';
    stack_.pop_back();
}

void JsonWriter::begin_array() {
    prefix();
    out_ += '[';
    stack_.push_back({'a', 0});
}

void JsonWriter::end_array() {
    out_ += ']';
    stack_.pop_back();
}

void JsonWriter::key(const std::string& name) {
    if (stack_.back().second > 0) out_ += ',';
    ++stack_.back().second;
    out_ += '"';
    out_ += name;
    out_ += "\":";
    pending_key_ = true;
}

void JsonWriter::value(double v) {
    prefix();
    const std::string s = format_double(v);
    if (s == "inf" || s == "-inf" || s == "nan") {
        out_ += '"';
        out_ += s;
        out_ += '"';
    } else {
        out_ += s;
    }
}

void JsonWriter::value_int(std::int64_t v) {
    prefix();
    out_ += std::to_string(v);
}

void JsonWriter::value_uint(std::uint64_t v) {
    prefix();
    out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
    prefix();
    out_ += v ? "true" : "false";
}

void JsonWriter::value(const std::string& v) {
    prefix();
    out_ += '"';
    for (char c : v) {
        switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default: out_ += c;
        }
    }
    out_ += '"';
}

void JsonWriter::raw_number_vector(const Vector& v) {
    begin_array();
    for (Index i = 0; i < v.size(); ++i) value(v[i]);
    end_array();
}

void JsonWriter::raw_matrix(const Matrix& m) {
    begin_array();
    for (Index i = 0; i < m.rows(); ++i) {
        begin_array();
        for (Index j = 0; j < m.cols(); ++j) value(m(i, j));
        end_array();
    }
    end_array();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// --- emit helpers ------------------------------------------------------------

namespace {

void emit_bound(JsonWriter& w, double v) { w.value(v); } // writer maps inf to strings

void emit_set(JsonWriter& w, const GroundSet& set) {
    w.begin_object();
    switch (set.kind()) {
    case SetKind::NonnegOrthant:
        w.key("type");
        w.value(std::string("nonneg-orthant"));
        w.key("dim");
        w.value_int(set.dim());
        break;
    case SetKind::Box:
        w.key("type");
        w.value(std::string("box"));
        w.key("lower");
        w.begin_array();
        for (Index i = 0; i < set.dim(); ++i) emit_bound(w, set.lower()[i]);
        w.end_array();
        w.key("upper");
        w.begin_array();
        for (Index i = 0; i < set.dim(); ++i) emit_bound(w, set.upper()[i]);
        w.end_array();
        break;
    case SetKind::Cartesian:
        w.key("type");
        w.value(std::string("cartesian"));
        w.key("blocks");
        w.begin_array();
        for (const auto& b : set.blocks()) emit_set(w, b);
        w.end_array();
        break;
    case SetKind::MixedPartition:
        w.key("type");
        w.value(std::string("mixed-partition"));
        w.key("nonneg_dim");
        w.value_int(set.nonneg_dim());
        w.key("free_dim");
        w.value_int(set.free_dim());
        break;
    }
    w.end_object();
}

void emit_affine(JsonWriter& w, const AffineInOmega& a) {
    w.begin_object();
    w.key("base");
    w.value(a.base);
    w.key("coeff");
    w.raw_number_vector(a.coeff);
    w.end_object();
}

void emit_piece(JsonWriter& w, const PiecewiseAffine& p) {
    w.begin_object();
    w.key("kinks");
    w.begin_array();
    for (double k : p.kinks) w.value(k);
    w.end_array();
    w.key("intercept0");
    emit_affine(w, p.intercept0);
    w.key("slopes");
    w.begin_array();
    for (const auto& s : p.slopes) emit_affine(w, s);
    w.end_array();
    w.key("blend_eps");
    w.value(p.blend_eps);
    w.end_object();
}

void emit_random_affine(JsonWriter& w, const RandomAffine& m) {
    w.begin_object();
    w.key("type");
    w.value(std::string("random-affine"));
    w.key("m_base");
    w.raw_matrix(m.m_base);
    w.key("m_coeff");
    w.begin_array();
    for (const auto& mk : m.m_coeff) w.raw_matrix(mk);
    w.end_array();
    w.key("q_base");
    w.raw_number_vector(m.q_base);
    w.key("q_coeff");
    w.raw_matrix(m.q_coeff);
    w.end_object();
}

void emit_smooth(JsonWriter& w, const SmoothMap& m) {
    w.begin_object();
    w.key("type");
    w.value(std::string("smooth"));
    w.key("dim");
    w.value_int(m.dim_n);
    w.key("omega_dim");
    w.value_int(m.omega_dim);
    w.key("pieces");
    w.begin_array();
    for (const auto& p : m.pieces) emit_piece(w, p);
    w.end_array();
    w.key("components");
    w.begin_array();
    for (const auto& comp : m.components) {
        w.begin_object();
        w.key("monomials");
        w.begin_array();
        for (const auto& mono : comp.monomials) {
            w.begin_object();
            w.key("coeff");
            emit_affine(w, mono.coeff);
            w.key("powers");
            w.begin_array();
            for (const auto& [var, pow] : mono.powers) {
                w.begin_array();
                w.value_int(var);
                w.value_int(pow);
                w.end_array();
            }
            w.end_array();
            w.end_object();
        }
        w.end_array();
        w.key("piecewise");
        w.begin_array();
        for (const auto& t : comp.piecewise) {
            w.begin_object();
            w.key("scale");
            w.value(t.scale);
            w.key("x_index");
            w.value_int(t.x_index);
            w.key("use_derivative");
            w.value(t.use_derivative);
            w.key("agg_weights");
            w.raw_number_vector(t.agg_weights);
            w.key("pw_index");
            w.value_int(t.pw_index);
            w.key("kink_side");
            w.value(std::string(t.kink_side == KinkSide::Left ? "left" : "right"));
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

void emit_single_map(JsonWriter& w, const SingleMap& m) {
    if (const auto* ra = std::get_if<RandomAffine>(&m)) emit_random_affine(w, *ra);
    else emit_smooth(w, std::get<SmoothMap>(m));
}

void emit_map(JsonWriter& w, const ScenarioMap& map) {
    if (const auto* ra = map.as_random_affine()) {
        emit_random_affine(w, *ra);
    } else if (const auto* sm = map.as_smooth()) {
        emit_smooth(w, *sm);
    } else {
        const auto* iv = map.as_interval();
        w.begin_object();
        w.key("type");
        w.value(std::string("interval"));
        w.key("lower_selection");
        emit_single_map(w, iv->sel_a);
        w.key("upper_selection");
        emit_single_map(w, iv->sel_b);
        w.end_object();
    }
}

void emit_scenarios(JsonWriter& w, const ScenarioModel& model) {
    w.begin_object();
    if (model.is_finite()) {
        w.key("type");
        w.value(std::string("finite"));
        w.key("outcomes");
        w.begin_array();
        for (const auto& o : model.outcomes()) {
            w.begin_object();
            w.key("omega");
            w.raw_number_vector(o.omega);
            w.key("prob");
            w.value(o.prob);
            w.end_object();
        }
        w.end_array();
    } else {
        w.key("type");
        w.value(std::string("sampler"));
        w.key("seed");
        w.value_uint(model.default_seed());
        w.key("coords");
        w.begin_array();
        for (const auto& c : model.coords()) {
            w.begin_object();
            w.key("dist");
            w.value(std::string(c.kind == DistKind::Uniform ? "uniform" : "normal"));
            if (c.kind == DistKind::Uniform) {
                w.key("a");
                w.value(c.p1);
                w.key("b");
                w.value(c.p2);
            } else {
                w.key("mu");
                w.value(c.p1);
                w.key("sigma");
                w.value(c.p2);
            }
            w.end_object();
        }
        w.end_array();
    }
    w.end_object();
}

void emit_moving_set(JsonWriter& w, const MovingSet& ms) {
    w.begin_object();
    if (ms.kind() == MovingSet::Kind::Translated) {
        w.key("type");
        w.value(std::string("translated"));
        w.key("base");
        emit_set(w, ms.base());
        w.key("c_lin");
        w.raw_matrix(ms.c_lin());
        w.key("c_const");
        w.raw_number_vector(ms.c_const());
    } else {
        w.key("type");
        w.value(std::string("aggregate-capacity-box"));
        w.key("dim");
        w.value_int(ms.dim());
        w.key("total_capacity");
        w.value(ms.total_capacity());
    }
    w.end_object();
}

const char* kind_name(ProblemKind kind) {
    switch (kind) {
    case ProblemKind::Svi: return "svi";
    case ProblemKind::Scp: return "scp";
    case ProblemKind::MixedScp: return "mixed-scp";
    case ProblemKind::Sqvi: return "sqvi";
    }
    return "svi";
}

// --- parse helpers -----------------------------------------------------------

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("problem file: " + what); }

double parse_bound(const json& j, const char* field) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        fail(std::string(field) + ": unknown bound string '" + s + "'");
    }
    if (!j.is_number()) fail(std::string(field) + ": expected number or inf string");
    return j.get<double>();
}

const json& need(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end()) fail(std::string("missing field '") + field + "'");
    return *it;
}

Vector parse_vector(const json& j, const char* field) {
    if (!j.is_array()) fail(std::string(field) + ": expected array");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = parse_bound(j[i], field);
    return v;
}

Matrix parse_matrix(const json& j, const char* field) {
    if (!j.is_array()) fail(std::string(field) + ": expected array of rows");
    const Index rows = static_cast<Index>(j.size());
    if (rows == 0) return Matrix(0, 0);
    const Index cols = static_cast<Index>(j[0].size());
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (static_cast<Index>(row.size()) != cols) fail(std::string(field) + ": ragged matrix rows");
        for (Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

GroundSet parse_set(const json& j) {
    const std::string type = need(j, "type").get<std::string>();
    if (type == "nonneg-orthant") return GroundSet::nonneg_orthant(need(j, "dim").get<Index>());
    if (type == "box") return GroundSet::box(parse_vector(need(j, "lower"), "set.lower"), parse_vector(need(j, "upper"), "set.upper"));
    if (type == "cartesian") {
        std::vector<GroundSet> blocks;
        for (const auto& b : need(j, "blocks")) blocks.push_back(parse_set(b));
        return GroundSet::cartesian(std::move(blocks));
    }
    if (type == "mixed-partition")
        return GroundSet::mixed_partition(need(j, "nonneg_dim").get<Index>(), need(j, "free_dim").get<Index>());
    fail("set.type: unknown variant '" + type + "'");
}

AffineInOmega parse_affine(const json& j, const char* field) {
    if (j.is_number()) return AffineInOmega::constant(j.get<double>());
    AffineInOmega a;
    a.base = need(j, "base").get<double>();
    a.coeff = parse_vector(need(j, "coeff"), field);
    return a;
}

PiecewiseAffine parse_piece(const json& j) {
    PiecewiseAffine p;
    for (const auto& k : need(j, "kinks")) p.kinks.push_back(k.get<double>());
    p.intercept0 = parse_affine(need(j, "intercept0"), "piece.intercept0");
    for (const auto& s : need(j, "slopes")) p.slopes.push_back(parse_affine(s, "piece.slopes"));
    p.blend_eps = need(j, "blend_eps").get<double>();
    p.validate();
    return p;
}

RandomAffine parse_random_affine(const json& j) {
    RandomAffine m;
    m.m_base = parse_matrix(need(j, "m_base"), "map.m_base");
    for (const auto& mk : need(j, "m_coeff")) m.m_coeff.push_back(parse_matrix(mk, "map.m_coeff"));
    m.q_base = parse_vector(need(j, "q_base"), "map.q_base");
    m.q_coeff = parse_matrix(need(j, "q_coeff"), "map.q_coeff");
    if (m.q_coeff.size() == 0) m.q_coeff = Matrix::Zero(m.q_base.size(), 0);
    m.validate();
    return m;
}

SmoothMap parse_smooth(const json& j) {
    SmoothMap m;
    m.dim_n = need(j, "dim").get<Index>();
    m.omega_dim = need(j, "omega_dim").get<Index>();
    for (const auto& p : need(j, "pieces")) m.pieces.push_back(parse_piece(p));
    for (const auto& comp : need(j, "components")) {
        SmoothMap::Component c;
        for (const auto& mono : need(comp, "monomials")) {
            MonomialTerm t;
            t.coeff = parse_affine(need(mono, "coeff"), "monomial.coeff");
            for (const auto& pw : need(mono, "powers"))
                t.powers.push_back({pw[0].get<Index>(), pw[1].get<int>()});
            c.monomials.push_back(std::move(t));
        }
        for (const auto& term : need(comp, "piecewise")) {
            PiecewiseTerm t;
            t.scale = need(term, "scale").get<double>();
            t.x_index = need(term, "x_index").get<Index>();
            t.use_derivative = need(term, "use_derivative").get<bool>();
            t.agg_weights = parse_vector(need(term, "agg_weights"), "piecewise.agg_weights");
            t.pw_index = need(term, "pw_index").get<Index>();
            const std::string side = need(term, "kink_side").get<std::string>();
            if (side != "left" && side != "right") fail("piecewise.kink_side: expected 'left' or 'right'");
            t.kink_side = side == "left" ? KinkSide::Left : KinkSide::Right;
            c.piecewise.push_back(std::move(t));
        }
        m.components.push_back(std::move(c));
    }
    m.validate();
    return m;
}

SingleMap parse_single_map(const json& j) {
    const std::string type = need(j, "type").get<std::string>();
    if (type == "random-affine") return parse_random_affine(j);
    if (type == "smooth") return parse_smooth(j);
    fail("map.type: interval selections must be single-valued, got '" + type + "'");
}

ScenarioMap parse_map(const json& j) {
    const std::string type = need(j, "type").get<std::string>();
    if (type == "random-affine") return ScenarioMap(parse_random_affine(j));
    if (type == "smooth") return ScenarioMap(parse_smooth(j));
    if (type == "interval") {
        IntervalMap iv;
        iv.sel_a = parse_single_map(need(j, "lower_selection"));
        iv.sel_b = parse_single_map(need(j, "upper_selection"));
        return ScenarioMap(std::move(iv));
    }
    fail("map.type: unknown variant '" + type + "'");
}

ScenarioModel parse_scenarios(const json& j) {
    const std::string type = need(j, "type").get<std::string>();
    if (type == "finite") {
        std::vector<Outcome> outcomes;
        for (const auto& o : need(j, "outcomes"))
            outcomes.push_back(Outcome{parse_vector(need(o, "omega"), "outcome.omega"), need(o, "prob").get<double>()});
        return ScenarioModel::finite_discrete(std::move(outcomes));
    }
    if (type == "sampler") {
        std::vector<CoordDist> coords;
        for (const auto& c : need(j, "coords")) {
            CoordDist d;
            const std::string dist = need(c, "dist").get<std::string>();
            if (dist == "uniform") {
                d.kind = DistKind::Uniform;
                d.p1 = need(c, "a").get<double>();
                d.p2 = need(c, "b").get<double>();
            } else if (dist == "normal") {
                d.kind = DistKind::Normal;
                d.p1 = need(c, "mu").get<double>();
                d.p2 = need(c, "sigma").get<double>();
            } else {
                fail("scenarios.coords.dist: unknown distribution '" + dist + "'");
            }
            coords.push_back(d);
        }
        return ScenarioModel::sampler(std::move(coords), need(j, "seed").get<std::uint64_t>());
    }
    fail("scenarios.type: unknown variant '" + type + "'");
}

MovingSet parse_moving_set(const json& j) {
    const std::string type = need(j, "type").get<std::string>();
    if (type == "translated")
        return MovingSet::translated(parse_set(need(j, "base")), parse_matrix(need(j, "c_lin"), "moving_set.c_lin"),
                                     parse_vector(need(j, "c_const"), "moving_set.c_const"));
    if (type == "aggregate-capacity-box")
        return MovingSet::aggregate_capacity_box(need(j, "dim").get<Index>(), need(j, "total_capacity").get<double>());
    fail("moving_set.type: unknown variant '" + type + "'");
}

} // namespace

std::string problem_to_json(const ProblemInstance& problem) {
    JsonWriter w;
    w.begin_object();
    w.key("format_version");
    w.value_int(kFormatVersion);
    w.key("kind");
    w.value(std::string(kind_name(problem.kind)));
    w.key("dim");
    w.value_int(problem.dim);
    w.key("set");
    emit_set(w, problem.set);
    if (problem.moving_set) {
        w.key("moving_set");
        emit_moving_set(w, *problem.moving_set);
    }
    w.key("map");
    emit_map(w, problem.map);
    w.key("scenarios");
    emit_scenarios(w, problem.scenarios);
    w.end_object();
    return w.str() + "\n";
}

ProblemInstance problem_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("problem file: invalid JSON: ") + e.what());
    }
    const int version = need(j, "format_version").get<int>();
    if (version != kFormatVersion) fail("format_version: unsupported version " + std::to_string(version));
    const std::string kind_str = need(j, "kind").get<std::string>();
    ProblemKind kind;
    if (kind_str == "svi") kind = ProblemKind::Svi;
    else if (kind_str == "scp") kind = ProblemKind::Scp;
    else if (kind_str == "mixed-scp") kind = ProblemKind::MixedScp;
    else if (kind_str == "sqvi") kind = ProblemKind::Sqvi;
    else fail("kind: unknown variant '" + kind_str + "'");

    GroundSet set = parse_set(need(j, "set"));
    std::optional<MovingSet> moving;
    if (j.contains("moving_set")) moving = parse_moving_set(j["moving_set"]);
    ScenarioMap map = parse_map(need(j, "map"));
    ScenarioModel scenarios = parse_scenarios(need(j, "scenarios"));

    ProblemInstance problem(kind, std::move(set), std::move(moving), std::move(map), std::move(scenarios));
    const Index declared = need(j, "dim").get<Index>();
    if (declared != problem.dim) fail("dim: declared dimension does not match the set");
    return problem;
}

std::string lcp_to_json(const LcpInstance& lcp) {
    JsonWriter w;
    w.begin_object();
    w.key("format_version");
    w.value_int(kFormatVersion);
    w.key("m");
    w.raw_matrix(lcp.m);
    w.key("q");
    w.raw_number_vector(lcp.q);
    w.end_object();
    return w.str() + "\n";
}

LcpInstance lcp_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("lcp file: invalid JSON: ") + e.what());
    }
    LcpInstance lcp;
    lcp.m = parse_matrix(need(j, "m"), "m");
    lcp.q = parse_vector(need(j, "q"), "q");
    lcp.validate();
    return lcp;
}

namespace {

ScenarioModel parse_config_scenarios(const json& j) { return parse_scenarios(need(j, "scenarios")); }

CournotConfig parse_cournot_config(const json& j) {
    CournotConfig c;
    for (const auto& f : need(j, "firms"))
        c.firms.push_back(CournotFirm{need(f, "gamma").get<double>(), need(f, "delta").get<double>()});
    for (const auto& b : need(j, "breakpoints")) c.breakpoints.push_back(b.get<double>());
    c.intercept0 = parse_affine(need(j, "intercept0"), "intercept0");
    for (const auto& s : need(j, "slopes")) c.slopes.push_back(parse_affine(s, "slopes"));
    c.smoothing_eps = need(j, "smoothing_eps").get<double>();
    if (j.contains("total_capacity")) c.total_capacity = j["total_capacity"].get<double>();
    c.model = parse_config_scenarios(j);
    c.validate();
    return c;
}

PowerNetworkConfig parse_power_config(const json& j) {
    PowerNetworkConfig c;
    c.nodes = need(j, "nodes").get<Index>();
    c.firms = need(j, "firms").get<Index>();
    for (const auto& t : need(j, "link_capacities")) c.link_capacities.push_back(t.get<double>());
    c.pdf = parse_matrix(need(j, "pdf"), "pdf");
    if (c.pdf.size() == 0) c.pdf = Matrix::Zero(0, c.nodes);
    for (const auto& a : need(j, "price_intercepts")) c.price_intercepts.push_back(parse_affine(a, "price_intercepts"));
    c.price_slopes = parse_vector(need(j, "price_slopes"), "price_slopes");
    c.cost_quad = parse_matrix(need(j, "cost_quad"), "cost_quad");
    for (const auto& row : need(j, "cost_lin")) {
        std::vector<AffineInOmega> r;
        for (const auto& a : row) r.push_back(parse_affine(a, "cost_lin"));
        c.cost_lin.push_back(std::move(r));
    }
    c.caps = parse_matrix(need(j, "caps"), "caps");
    c.model = parse_config_scenarios(j);
    c.validate();
    return c;
}

} // namespace

GeneratorConfig generator_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config file: invalid JSON: ") + e.what());
    }
    const std::string model = need(j, "model").get<std::string>();
    if (model == "cournot") return parse_cournot_config(j);
    if (model == "power") return parse_power_config(j);
    fail("model: expected 'cournot' or 'power', got '" + model + "'");
}

namespace {

void emit_manifest(JsonWriter& w, const Manifest& m) {
    w.begin_object();
    w.key("command");
    w.value(m.command);
    w.key("inputs");
    w.begin_array();
    for (const auto& [path, digest] : m.inputs) {
        w.begin_object();
        w.key("path");
        w.value(path);
        w.key("digest");
        w.value(digest);
        w.end_object();
    }
    w.end_array();
    w.key("seed");
    w.value_uint(m.seed);
    w.key("tool_version");
    w.value(m.tool_version);
    w.end_object();
}

const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIter: return "max-iter";
    case SolveStatus::Diverged: return "diverged";
    }
    return "max-iter";
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

} // namespace

std::string solve_report_json(const Manifest& manifest, const std::string& method, const SolveResult& result) {
    JsonWriter w;
    w.begin_object();
    w.key("format_version");
    w.value_int(kFormatVersion);
    w.key("type");
    w.value(std::string("solve"));
    w.key("manifest");
    emit_manifest(w, manifest);
    w.key("result");
    w.begin_object();
    w.key("method");
    w.value(method);
    w.key("status");
    w.value(std::string(status_name(result.status)));
    w.key("x");
    w.raw_number_vector(result.x);
    w.key("residual");
    w.value(result.residual);
    w.key("iterations");
    w.value_int(result.iterations);
    w.key("samples");
    w.value_int(result.samples_used);
    w.key("seed");
    w.value_uint(result.seed);
    w.key("objective");
    w.value(result.objective);
    w.key("note");
    w.value(result.note);
    if (!result.trace.empty()) {
        w.key("trace");
        w.begin_array();
        for (double v : result.trace) w.value(v);
        w.end_array();
    }
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

std::string certify_report_json(const Manifest& manifest, const CertificateReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("format_version");
    w.value_int(kFormatVersion);
    w.key("type");
    w.value(std::string("certify"));
    w.key("manifest");
    emit_manifest(w, manifest);
    w.key("result");
    w.begin_object();
    w.key("condition");
    w.value(report.condition);
    w.key("verdict");
    w.value(std::string(verdict_name(report.verdict)));
    w.key("margin");
    w.value(report.margin);
    w.key("note");
    w.value(report.note);
    if (report.witness) {
        const auto& wit = *report.witness;
        w.key("witness");
        w.begin_object();
        w.key("scenario_index");
        w.value_int(wit.scenario_index);
        w.key("omega");
        w.raw_number_vector(wit.omega);
        w.key("direction_index");
        w.value_int(wit.direction_index);
        w.key("direction");
        w.raw_number_vector(wit.direction);
        w.key("radius");
        w.value(wit.radius);
        w.key("value");
        w.value(wit.value);
        w.key("point");
        w.raw_number_vector(wit.point);
        w.key("detail");
        w.value(wit.detail);
        w.end_object();
    }
    w.key("evidence");
    w.begin_array();
    for (const auto& cell : report.evidence) {
        w.begin_object();
        w.key("scenario_index");
        w.value_int(cell.scenario_index);
        w.key("direction_index");
        w.value_int(cell.direction_index);
        w.key("tail");
        w.begin_array();
        for (double v : cell.tail) w.value(v);
        w.end_array();
        w.key("tail_min");
        w.value(cell.tail_min);
        w.key("slope_sign");
        w.value_int(cell.slope_sign);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

std::string oracle_report_json(const Manifest& manifest, const LcpInstance& lcp,
                               const std::vector<LcpSolution>& solutions, const CopositivityVerdict& copositivity,
                               const R0Verdict& r0, double beta) {
    JsonWriter w;
    w.begin_object();
    w.key("format_version");
    w.value_int(kFormatVersion);
    w.key("type");
    w.value(std::string("oracle"));
    w.key("manifest");
    emit_manifest(w, manifest);
    w.key("result");
    w.begin_object();
    w.key("dim");
    w.value_int(lcp.dim());
    w.key("solutions");
    w.begin_array();
    for (const auto& s : solutions) {
        w.begin_object();
        w.key("x");
        w.raw_number_vector(s.x);
        w.key("support");
        w.begin_array();
        for (Index i = 0; i < lcp.dim(); ++i)
            if (s.support & (1u << i)) w.value_int(i);
        w.end_array();
        w.key("degenerate");
        w.value(s.degenerate);
        w.key("note");
        w.value(s.note);
        w.end_object();
    }
    w.end_array();
    w.key("copositivity");
    w.begin_object();
    w.key("status");
    switch (copositivity.status) {
    case CopositivityVerdict::Status::Copositive: w.value(std::string("copositive")); break;
    case CopositivityVerdict::Status::NotCopositive: w.value(std::string("not-copositive")); break;
    case CopositivityVerdict::Status::Undecided: w.value(std::string("undecided")); break;
    }
    if (copositivity.status == CopositivityVerdict::Status::NotCopositive) {
        w.key("witness");
        w.raw_number_vector(copositivity.witness);
        w.key("witness_value");
        w.value(copositivity.witness_value);
    }
    w.end_object();
    w.key("r0");
    w.begin_object();
    w.key("status");
    w.value(std::string(r0.status == R0Verdict::Status::R0 ? "r0" : "not-r0"));
    if (r0.status == R0Verdict::Status::NotR0) {
        w.key("witness");
        w.raw_number_vector(r0.witness);
    }
    w.end_object();
    w.key("scaling_beta");
    w.value(beta);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

} // namespace svi::io
