#include "gk/instance.hpp"

#include <algorithm>
#include <filesystem>
#include <regex>

#include "gk/exprparse.hpp"

namespace gk {

const Involution& Instance::involution() const {
    if (!sigma) throw InstanceError(name + ": command needs an [involution] section");
    return *sigma;
}

const NormPtr& Instance::norm() const {
    if (!phi) throw InstanceError(name + ": command needs a [value_function] on the algebra");
    return phi;
}

namespace {

Q parse_rational(const Config& cfg, const ConfigValue& cv, const std::string& what) {
    std::string t = cfg.scalar_text(cv, what);
    static const std::regex re(R"(\s*[-+]?\d+(\s*/\s*\d+)?\s*)");
    if (!std::regex_match(t, re)) cfg.fail(cv, what + ": expected a rational \"p/q\", got '" + t + "'");
    t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '+'; }),
            t.end());
    Q q(t);
    if (q.get_den() == 0) cfg.fail(cv, what + ": zero denominator");
    q.canonicalize();
    return q;
}

Elem parse_scalar(const Config& cfg, const ConfigValue& cv, const FieldPtr& F, const std::string& what) {
    try {
        return parse_elem(F, cfg.scalar_text(cv, what));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        cfg.fail(cv, what + ": " + e.what());
    }
}

const ConfigValue& array_of(const Config& cfg, const std::string& s, const std::string& key) {
    const auto& v = cfg.get(s, key);
    if (!v.is_array()) cfg.fail(v, s + "." + key + ": expected an array");
    return v;
}

std::vector<std::vector<Elem>> scalar_matrix(const Config& cfg, const std::string& s, const std::string& key,
                                             const FieldPtr& F) {
    const auto& rows = array_of(cfg, s, key);
    std::vector<std::vector<Elem>> out;
    for (const auto& row : rows.items) {
        if (!row.is_array()) cfg.fail(row, s + "." + key + ": expected an array of rows");
        out.emplace_back();
        for (const auto& c : row.items) out.back().push_back(parse_scalar(cfg, c, F, s + "." + key));
        if (out.back().size() != out.front().size()) cfg.fail(row, s + "." + key + ": rows of different length");
    }
    return out;
}

// ---- field ----

void build_field(const Config& cfg, Instance& I) {
    const std::string sec = "field";
    long long p = cfg.integer(sec, "characteristic", 0);
    if (p < 0) cfg.fail(cfg.get(sec, "characteristic"), "field.characteristic: must be 0 or a prime");
    std::vector<std::string> vars;
    if (cfg.has(sec, "variables")) vars = cfg.strings(sec, "variables");
    try {
        I.F = make_field(static_cast<unsigned long>(p), vars);
    } catch (const std::exception& e) {
        cfg.fail(cfg.get(sec, "characteristic"), std::string("field: ") + e.what());
    }
    std::string kind = cfg.str(sec, "valuation", "trivial");
    try {
        if (kind == "p-adic") {
            if (p != 0 || !vars.empty()) throw InstanceError("field: p-adic valuation needs the field Q");
            long long q = cfg.integer(sec, "prime");
            if (q < 2) cfg.fail(cfg.get(sec, "prime"), "field.prime: expected a prime");
            I.v = padic(static_cast<unsigned long>(q));
        } else if (kind == "monomial") {
            const auto& w = array_of(cfg, sec, "weights");
            if (w.items.size() != vars.size()) cfg.fail(w, "field.weights: one weight per variable expected");
            std::size_t rank = 0;
            for (const auto& x : w.items) rank = std::max<std::size_t>(rank, x.is_array() ? x.items.size() : 1);
            std::vector<Value> ws;
            for (const auto& x : w.items) ws.push_back(parse_value(cfg, x, rank, "field.weights"));
            std::optional<std::pair<unsigned long, Value>> coef;
            if (cfg.has(sec, "prime"))
                coef = std::pair{static_cast<unsigned long>(cfg.integer(sec, "prime")),
                                 parse_value(cfg, cfg.get(sec, "prime_value"), rank, "field.prime_value")};
            I.v = monomial(I.F, ws, coef);
        } else if (kind == "trivial") {
            I.v = trivial_valuation(I.F, static_cast<std::size_t>(cfg.integer(sec, "rank", 1)));
        } else {
            const auto& at = cfg.get(sec, "valuation");
            cfg.fail(at, "unsupported field preset '" + kind + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw InstanceError(cfg.origin() + ": field: " + e.what());
    }
    I.F = I.v->field();
    I.notes.push_back("valuation: " + I.v->describe());
}

// ---- algebra ----

struct Lin {
    Vec v;
    bool scalar = false;
    Elem c;
};

AlgPtr custom_algebra(const Config& cfg, const FieldPtr& F) {
    const std::string sec = "algebra";
    auto names = cfg.strings(sec, "basis");
    const std::size_t n = names.size();
    if (n == 0) cfg.fail(cfg.get(sec, "basis"), "algebra.basis: empty basis");
    const auto& rows = array_of(cfg, sec, "table");
    if (rows.items.size() != n) cfg.fail(rows, "algebra.table: expected " + std::to_string(n) + " rows");
    std::optional<std::size_t> unit_idx;
    for (std::size_t i = 0; i < n; ++i)
        if (names[i] == "1") unit_idx = i;
    ExprOps<Lin> ops;
    auto as_vec = [&](const Lin& a) -> Vec {
        if (!a.scalar) return a.v;
        if (a.c.is_zero()) return zero_vec(F, n);
        if (!unit_idx) throw std::invalid_argument("scalar term needs a basis element named 1");
        return scale(unit_vec(F, n, *unit_idx), a.c);
    };
    ops.number = [&](const Z& z) { return Lin{{}, true, Elem::of(F, Q(z))}; };
    ops.name = [&](const std::string& nm) -> Lin {
        for (std::size_t i = 0; i < n; ++i)
            if (names[i] == nm) return Lin{unit_vec(F, n, i), false, {}};
        for (int i = 0; i < F->nvars(); ++i)
            if (F->vars[i] == nm) return Lin{{}, true, Elem::var(F, i)};
        throw std::invalid_argument("unknown name");
    };
    ops.add = [&](const Lin& a, const Lin& b) {
        if (a.scalar && b.scalar) return Lin{{}, true, a.c + b.c};
        return Lin{as_vec(a) + as_vec(b), false, {}};
    };
    ops.neg = [&](const Lin& a) { return a.scalar ? Lin{{}, true, -a.c} : Lin{-a.v, false, {}}; };
    ops.sub = [&](const Lin& a, const Lin& b) { return ops.add(a, ops.neg(b)); };
    ops.mul = [&](const Lin& a, const Lin& b) -> Lin {
        if (a.scalar && b.scalar) return Lin{{}, true, a.c * b.c};
        if (a.scalar) return Lin{scale(b.v, a.c), false, {}};
        if (b.scalar) return Lin{scale(a.v, b.c), false, {}};
        throw ParseError("structure table entries must be linear in the basis");
    };
    ops.div = [&](const Lin& a, const Lin& b) -> Lin {
        if (!b.scalar) throw ParseError("division by a basis element");
        return ops.mul(a, Lin{{}, true, b.c.inv()});
    };
    ops.pow = [&](const Lin& a, long e) -> Lin {
        if (!a.scalar) throw ParseError("power of a basis element");
        return Lin{{}, true, a.c.pow(e)};
    };
    std::vector<std::vector<Vec>> table(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows.items[i];
        if (!row.is_array() || row.items.size() != n)
            cfg.fail(row, "algebra.table: row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
        for (const auto& cell : row.items) {
            try {
                table[i].push_back(as_vec(parse_expr(cfg.scalar_text(cell, "algebra.table"), ops)));
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                cfg.fail(cell, std::string("algebra.table: ") + e.what());
            }
        }
    }
    AlgPtr A;
    try {
        A = std::make_shared<Algebra>(F, names, table);
    } catch (const std::invalid_argument& e) {
        cfg.fail(rows, std::string("algebra.table: ") + e.what());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (A->mul(table[i][j], A->basis(k)) != A->mul(A->basis(i), table[j][k]))
                    cfg.fail(rows, "algebra.table: not associative at (" + names[i] + ", " + names[j] + ", " + names[k] +
                                       "): (" + names[i] + " " + names[j] + ") " + names[k] + " != " + names[i] + " (" +
                                       names[j] + " " + names[k] + ")");
    return A;
}

void build_algebra(const Config& cfg, Instance& I) {
    const std::string sec = "algebra";
    if (!cfg.has_section(sec)) return;
    std::string preset = cfg.str(sec, "preset");
    const FieldPtr& F = I.F;
    auto elem = [&](const std::string& key) { return parse_scalar(cfg, cfg.get(sec, key), F, sec + "." + key); };
    if (preset == "matrix") {
        long long n = cfg.integer(sec, "n");
        if (n < 1 || n > 6) cfg.fail(cfg.get(sec, "n"), "algebra.n: expected 1..6");
        I.A = matrix_algebra(F, static_cast<std::size_t>(n));
    } else if (preset == "quaternion") {
        Elem a = elem("a"), b = elem("b");
        if (a.is_zero() || b.is_zero()) cfg.fail(cfg.get(sec, "a"), "algebra: quaternion parameters must be nonzero");
        if (F->p == 2) cfg.fail(cfg.get(sec, "preset"), "algebra: quaternion preset needs characteristic != 2");
        I.A = quaternion_algebra(a, b);
        if (cfg.boolean(sec, "division", false) || cfg.has_section("extension")) {
            try {
                auto qd = quaternion_division(I.v, a, b);
                I.division = qd.ring;
                I.division_certificate = qd.certificate;
                I.A = qd.ring.D;
                I.notes.push_back("division algebra: " + qd.certificate);
            } catch (const UnsupportedError& e) {
                if (cfg.boolean(sec, "division", false)) throw InstanceError(cfg.origin() + ": algebra: " + e.what());
            }
        }
    } else if (preset == "symbol") {
        long long m = cfg.integer(sec, "m");
        if (m < 2) cfg.fail(cfg.get(sec, "m"), "algebra.m: expected m >= 2");
        I.A = symbol_algebra(elem("a"), elem("b"), static_cast<std::size_t>(m), elem("omega"));
        if (!I.A->is_associative()) cfg.fail(cfg.get(sec, "omega"), "algebra: omega is not a primitive root of unity");
    } else if (preset == "custom") {
        I.A = custom_algebra(cfg, F);
    } else {
        cfg.fail(cfg.get(sec, "preset"), "unsupported algebra preset '" + preset + "'");
    }
}

// ---- involution ----

void build_involution(const Config& cfg, Instance& I) {
    const std::string sec = "involution";
    if (!cfg.has_section(sec)) return;
    if (!I.A) throw InstanceError(cfg.origin() + ": [involution] needs an [algebra]");
    std::string preset = cfg.str(sec, "preset");
    const auto& at = cfg.get(sec, "preset");
    const FieldPtr& F = I.F;
    const std::string alg = cfg.str("algebra", "preset");
    Involution s;
    if (preset == "transpose") {
        if (alg != "matrix") cfg.fail(at, "involution: transpose needs the matrix preset");
        s = transpose_involution(F, static_cast<std::size_t>(cfg.integer("algebra", "n")));
    } else if (preset == "conjugation") {
        if (alg != "quaternion") cfg.fail(at, "involution: conjugation needs the quaternion preset");
        s = conjugation_involution(I.A);
    } else if (preset == "adjoint") {
        if (alg != "matrix") cfg.fail(at, "involution: adjoint needs the matrix preset");
        auto g = scalar_matrix(cfg, sec, "gram", F);
        std::size_t n = static_cast<std::size_t>(cfg.integer("algebra", "n"));
        if (g.size() != n || g[0].size() != n) cfg.fail(cfg.get(sec, "gram"), "involution.gram: expected an n x n matrix");
        auto D = DivisionRing::field(I.v);
        DMat H;
        for (const auto& row : g) {
            H.emplace_back();
            for (const auto& c : row) H.back().push_back(Vec{c});
        }
        HermitianForm h{D, H};
        if (!is_hermitian(h)) cfg.fail(cfg.get(sec, "gram"), "involution.gram: form is not symmetric");
        if (!is_nondegenerate(h)) cfg.fail(cfg.get(sec, "gram"), "involution.gram: form is degenerate");
        I.form = h;
        s = adjoint_involution(h);
    } else if (preset == "custom") {
        const std::size_t n = I.A->dim();
        if (cfg.has(sec, "images")) {
            auto imgs = cfg.strings(sec, "images");
            if (imgs.size() != n) cfg.fail(cfg.get(sec, "images"), "involution.images: one image per basis element");
            std::vector<Vec> cols;
            for (const auto& t : imgs) {
                try {
                    cols.push_back(I.A->parse(t));
                } catch (const std::exception& e) {
                    cfg.fail(cfg.get(sec, "images"), std::string("involution.images: ") + e.what());
                }
            }
            s.S = from_columns(cols);
        } else {
            auto m = scalar_matrix(cfg, sec, "matrix", F);
            if (m.size() != n || m[0].size() != n) cfg.fail(cfg.get(sec, "matrix"), "involution.matrix: expected dim x dim");
            s.S = m;
        }
    } else {
        cfg.fail(at, "unsupported involution preset '" + preset + "'");
    }
    std::string defect = involution_defect(*I.A, s);
    if (!defect.empty()) cfg.fail(at, "involution: not an involution: " + defect);
    I.sigma = s;
    I.involution_preset = preset;
}

// ---- extension ----

void build_extension(const Config& cfg, Instance& I) {
    const std::string sec = "extension";
    if (!cfg.has_section(sec)) return;
    std::string mode = cfg.str(sec, "valuation-extension", "unique");
    if (mode != "unique")
        cfg.fail(cfg.get(sec, "valuation-extension"), "extension: only 'unique' valuation extensions are supported");
    Elem d = parse_scalar(cfg, cfg.get(sec, "d"), I.F, "extension.d");
    std::string nm = cfg.str(sec, "name", "s");
    try {
        I.ext = quadratic_extension(I.v, d, nm);
    } catch (const UnsupportedError& e) {
        cfg.fail(cfg.get(sec, "d"), std::string("extension: ") + e.what());
    }
    auto rep = check_unique_extension(*I.v, d);
    I.ext_certificate = rep.certificate;
    I.notes.push_back("extension: " + I.ext->kind + ", " + rep.certificate);
    I.twist = static_cast<std::size_t>(cfg.integer(sec, "twist", 0));
    if (I.twist > 1) cfg.fail(cfg.get(sec, "twist"), "extension.twist: expected 0 or 1");
    if (cfg.has(sec, "subfield-of")) {
        if (cfg.str(sec, "subfield-of") != "algebra")
            cfg.fail(cfg.get(sec, "subfield-of"), "extension.subfield-of: expected \"algebra\"");
        if (!I.division) throw InstanceError(cfg.origin() + ": extension.subfield-of needs a certified division algebra");
        Vec gen;
        try {
            gen = I.A->parse(cfg.str(sec, "via"));
        } catch (const std::exception& e) {
            cfg.fail(cfg.get(sec, "via"), std::string("extension.via: ") + e.what());
        }
        try {
            I.embedded = embed_field(*I.division, *I.ext, gen);
        } catch (const std::invalid_argument& e) {
            cfg.fail(cfg.get(sec, "via"), std::string("extension.via: ") + e.what());
        }
    }
}

// ---- value function ----

std::vector<Value> values_of(const Config& cfg, const std::string& sec, std::size_t n, std::size_t rank) {
    if (!cfg.has(sec, "values")) return std::vector<Value>(n, Value::zero(rank));
    const auto& vs = array_of(cfg, sec, "values");
    if (vs.items.size() != n) cfg.fail(vs, sec + ".values: expected " + std::to_string(n) + " values");
    std::vector<Value> out;
    for (const auto& x : vs.items) out.push_back(parse_value(cfg, x, rank, sec + ".values"));
    return out;
}

void build_value_function(const Config& cfg, Instance& I) {
    const std::string sec = "value_function";
    if (!cfg.has_section(sec)) return;
    std::string kind = cfg.str(sec, "kind");
    const auto& at = cfg.get(sec, "kind");
    const std::size_t rank = I.v->rank();
    I.phi_kind = kind;
    try {
        if (kind == "min-of-coordinates" || kind == "split") {
            if (!I.A) cfg.fail(at, "value_function: needs an [algebra]");
            const std::size_t n = I.A->dim();
            std::vector<Vec> base;
            if (cfg.has(sec, "base")) {
                if (kind == "min-of-coordinates") cfg.fail(cfg.get(sec, "base"), "value_function: base given for min-of-coordinates");
                for (const auto& t : cfg.strings(sec, "base")) base.push_back(I.A->parse(t));
                if (base.size() != n) cfg.fail(cfg.get(sec, "base"), sec + ".base: expected " + std::to_string(n) + " vectors");
            } else {
                for (std::size_t i = 0; i < n; ++i) base.push_back(I.A->basis(i));
            }
            I.phi = std::make_shared<SplitNorm>(I.v, base, values_of(cfg, sec, n, rank));
        } else if (kind == "end") {
            if (cfg.str("algebra", "preset") != "matrix") cfg.fail(at, "value_function: end needs the matrix preset");
            const std::size_t n = static_cast<std::size_t>(cfg.integer("algebra", "n"));
            auto D = DivisionRing::field(I.v);
            std::vector<DVec> base;
            if (cfg.has(sec, "base")) {
                auto m = scalar_matrix(cfg, sec, "base", I.F);
                if (m.size() != n || m[0].size() != n) cfg.fail(cfg.get(sec, "base"), sec + ".base: expected n vectors of length n");
                for (const auto& col : m) {
                    base.emplace_back();
                    for (const auto& c : col) base.back().push_back(Vec{c});
                }
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    base.emplace_back();
                    for (std::size_t j = 0; j < n; ++j) base.back().push_back(Vec{Elem::of(I.F, i == j ? 1 : 0)});
                }
            }
            I.alpha = DNorm{D, base, values_of(cfg, sec, n, rank)};
            I.phi = end_norm(*I.alpha);
        } else if (kind == "over-extension") {
            if (!I.ext) cfg.fail(at, "value_function: over-extension needs an [extension]");
            const FieldPtr& K = I.ext->big_field();
            auto m = scalar_matrix(cfg, sec, "base", K);
            std::vector<Vec> base(m.begin(), m.end());
            for (const auto& b : base)
                if (b.size() != base.size()) cfg.fail(cfg.get(sec, "base"), sec + ".base: expected a square list of vectors");
            I.ext_norm = std::make_shared<SplitNorm>(I.ext->vL, base, values_of(cfg, sec, base.size(), rank));
        } else {
            cfg.fail(at, "unsupported value function kind '" + kind + "'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        cfg.fail(at, std::string("value_function: ") + e.what());
    }
}

void build_options(const Config& cfg, Instance& I) {
    const std::string sec = "command-options";
    if (!cfg.has_section(sec)) return;
    if (cfg.has(sec, "budget")) {
        long long b = cfg.integer(sec, "budget");
        if (b <= 0) cfg.fail(cfg.get(sec, "budget"), "command-options.budget: must be positive");
        I.opt.search_budget = static_cast<std::uint64_t>(b);
        I.opt.aniso.budget = static_cast<std::uint64_t>(b);
    }
    if (cfg.has(sec, "seed")) I.opt.seed = static_cast<std::uint64_t>(cfg.integer(sec, "seed"));
    if (cfg.has(sec, "samples")) I.opt.samples = static_cast<int>(cfg.integer(sec, "samples"));
    if (cfg.has(sec, "coarsen_keep")) {
        long long k = cfg.integer(sec, "coarsen_keep");
        if (k < 1 || static_cast<std::size_t>(k) >= I.v->rank())
            cfg.fail(cfg.get(sec, "coarsen_keep"), "command-options.coarsen_keep: must lie strictly between 0 and the rank");
        I.coarsen_keep = static_cast<std::size_t>(k);
    }
    if (cfg.has(sec, "units")) {
        if (!I.A) cfg.fail(cfg.get(sec, "units"), "command-options.units: needs an [algebra]");
        for (const auto& t : cfg.strings(sec, "units")) {
            Vec u;
            try {
                u = I.A->parse(t);
            } catch (const std::exception& e) {
                cfg.fail(cfg.get(sec, "units"), std::string("command-options.units: ") + e.what());
            }
            if (!I.A->inverse(u)) cfg.fail(cfg.get(sec, "units"), "command-options.units: " + t + " is not invertible");
            I.units.push_back(u);
        }
    }
    if (cfg.has(sec, "suite")) I.suite = cfg.strings(sec, "suite");
}

}  // namespace

Value parse_value(const Config& cfg, const ConfigValue& v, std::size_t rank, const std::string& what) {
    if (v.kind == ConfigValue::Kind::String && v.text == "inf") cfg.fail(v, what + ": infinite value not allowed here");
    std::vector<Q> cs;
    if (v.is_array()) {
        for (const auto& x : v.items) cs.push_back(parse_rational(cfg, x, what));
    } else {
        cs.push_back(parse_rational(cfg, v, what));
    }
    if (cs.size() != rank)
        cfg.fail(v, what + ": expected a value of rank " + std::to_string(rank) + ", got rank " + std::to_string(cs.size()));
    return Value(cs);
}

Instance build_instance(const Config& cfg, const std::string& name) {
    Instance I;
    I.cfg = cfg;
    I.name = name;
    for (const auto& s : cfg.section_names()) {
        static const std::vector<std::string> known = {"field", "algebra", "involution", "value_function",
                                                       "extension", "command-options", "command-options.expect"};
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw InstanceError(cfg.origin() + ": unknown section [" + s + "]");
    }
    if (!cfg.section("").empty()) throw InstanceError(cfg.origin() + ": keys before the first section");
    build_field(cfg, I);
    build_algebra(cfg, I);
    build_involution(cfg, I);
    build_extension(cfg, I);
    build_value_function(cfg, I);
    build_options(cfg, I);
    return I;
}

Instance load_instance(const std::string& path) {
    return build_instance(Config::load(path), std::filesystem::path(path).filename().string());
}

}  // namespace gk
