#include "gk/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace gk {

using nlohmann::json;

json value_json(const Value& g) {
    if (g.is_inf()) return "inf";
    json a = json::array();
    for (const auto& q : g.coords()) a.push_back(q.get_str());
    return a;
}

json vec_json(const Vec& x) {
    json a = json::array();
    for (const auto& c : x) a.push_back(c.str());
    return a;
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"check-gauge", "check-invariant", "check-special", "springer",
                                                   "graded-dump", "compose", "extend", "isotropy", "descent", "suite"};
    return names;
}

namespace {

std::string aniso_str(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "anisotropic";
        case Verdict::No: return "isotropic";
        default: return "undecided";
    }
}

json element_json(const Algebra& A, const Vec& x) { return json{{"coords", vec_json(x)}, {"text", A.str(x)}}; }

json aniso_json(const Algebra& B, const AnisotropyResult& r) {
    json j{{"verdict", aniso_str(r.verdict)}, {"certificate", r.certificate}, {"examined", r.examined}};
    if (r.witness) j["witness"] = element_json(B, *r.witness);
    return j;
}

json grade_json(const std::vector<Value>& g) {
    json a = json::array();
    for (const auto& x : g) a.push_back(value_json(x));
    return a;
}

GaugeOptions options_for(const Instance& I, const RunOptions& ro) {
    GaugeOptions o = I.opt;
    if (ro.budget) {
        o.search_budget = *ro.budget;
        o.aniso.budget = *ro.budget;
    }
    if (ro.seed) o.seed = *ro.seed;
    return o;
}

const AlgPtr& algebra_of(const Instance& I) {
    if (!I.A) throw InstanceError(I.name + ": command needs an [algebra] section");
    return I.A;
}

// ---- commands ----

CommandResult cmd_check_gauge(const Instance& I, const GaugeOptions& opt) {
    const auto& A = algebra_of(I);
    auto g = check_gauge(A, I.norm(), opt);
    CommandResult r;
    json& j = r.report;
    j["gauge"] = g.gauge();
    j["norm"] = g.is_norm;
    j["surmultiplicative"] = g.is_surmultiplicative;
    j["semisimple"] = g.is_semisimple;
    j["tame"] = g.is_tame ? json(*g.is_tame) : json("unsupported");
    j["note"] = g.note;
    if (g.surmult_witness) j["surmult_witness"] = {element_json(*A, g.surmult_witness->first), element_json(*A, g.surmult_witness->second)};
    std::ostringstream os;
    if (g.is_norm && g.is_surmultiplicative) {
        auto G = build_graded(A, I.norm());
        auto z = G.zero_component();
        j["graded_dim"] = G.dim();
        j["residue_dim"] = z.size();
        j["radical_dim"] = g.radical_witness.size();
        json comps = json::array();
        for (std::size_t c = 0; c < G.components.size(); ++c)
            comps.push_back({{"grade", grade_json(G.component_grade[c])}, {"dim", G.components[c].size()}});
        j["components"] = comps;
        json rad = json::array();
        for (const auto& x : g.radical_witness) rad.push_back(element_json(*G.B, x));
        j["radical"] = rad;
        os << "graded algebra: dim " << G.dim() << ", degree-0 part dim " << z.size() << ", graded radical dim "
           << g.radical_witness.size() << "\n";
    }
    if (g.gauge()) {
        os << "gauge";
        if (g.is_tame) os << (*g.is_tame ? " (tame)" : " (not tame)");
        else os << " (tameness unsupported)";
        os << "\n";
    } else {
        os << "NOT a gauge:";
        if (!g.is_norm) os << " not a norm;";
        if (!g.is_surmultiplicative) {
            os << " not surmultiplicative";
            if (g.surmult_witness)
                os << " at x = " << A->str(g.surmult_witness->first) << ", y = " << A->str(g.surmult_witness->second);
            os << ";";
        }
        if (g.is_norm && g.is_surmultiplicative && !g.is_semisimple) os << " graded radical nonzero;";
        os << "\n";
    }
    if (!g.note.empty()) os << "note: " << g.note << "\n";
    r.text = os.str();
    return r;
}

CommandResult cmd_check_invariant(const Instance& I, const GaugeOptions& opt) {
    const auto& A = algebra_of(I);
    auto inv = check_invariant(I.norm(), I.involution(), opt);
    CommandResult r;
    r.report["invariant"] = inv.invariant;
    r.report["certified"] = inv.certified;
    if (inv.witness) r.report["witness"] = element_json(*A, *inv.witness);
    if (inv.invariant)
        r.text = std::string("σ-invariant") + (inv.certified ? " (checked on a splitting base)" : " (sampled)") + "\n";
    else
        r.text = "NOT σ-invariant; witness " + A->str(*inv.witness) + "\n";
    if (inv.invariant && !inv.certified) r.exit_code = kUndecided;
    return r;
}

CommandResult cmd_check_special(const Instance& I, const GaugeOptions& opt) {
    const auto& A = algebra_of(I);
    const auto& s = I.involution();
    auto sp = check_special(A, s, I.norm(), opt);
    CommandResult r;
    json& j = r.report;
    j["special"] = verdict_str(sp.special);
    j["invariant"] = sp.invariant;
    j["certificate"] = sp.certificate;
    j["searched"] = sp.searched;
    std::ostringstream os;
    if (sp.witness) {
        j["witness"] = element_json(*A, *sp.witness);
        j["value_x"] = value_json(*sp.value_x);
        j["value_sigma_x_x"] = value_json(*sp.value_sxx);
    }
    auto G = build_graded(A, I.norm());
    if (sp.invariant) j["graded_anisotropy"] = aniso_json(*G.B, sp.graded);
    if (sp.special == Verdict::No) {
        os << "NOT σ-special; witness " << A->str(*sp.witness) << "\n";
        os << "  φ(x) = " << *sp.value_x << ", φ(σ(x)x) = " << *sp.value_sxx << "\n";
    } else if (sp.special == Verdict::Yes) {
        os << "σ-special (" << sp.certificate << ")\n";
    } else {
        os << "undecided whether σ-special (" << sp.certificate << ")\n";
        r.exit_code = kUndecided;
    }
    if (sp.invariant) {
        auto pr = mainthcor_probe(A, s, I.norm(), opt, I.units);
        j["existence"] = {{"verdict", pr.verdict},
                          {"conjugates_checked", pr.conjugates_checked},
                          {"conjugates_special", pr.conjugates_special},
                          {"uniqueness_alarm", pr.uniqueness_alarm}};
        if (pr.verdict == "no special gauge")
            os << "no σ-special gauge exists (residue involution isotropic)\n";
        else if (pr.verdict == "unique special")
            os << "this gauge is the unique σ-special gauge\n";
        else
            os << "existence of a σ-special gauge undecided\n";
        os << "  conjugate gauges checked: " << pr.conjugates_checked << ", special among them: " << pr.conjugates_special
           << "\n";
        if (pr.uniqueness_alarm) os << "  WARNING: conjugate gauges contradict the uniqueness statement\n";
    }
    r.text = os.str();
    return r;
}

CommandResult cmd_springer(const Instance& I, const GaugeOptions& opt) {
    const auto& A = algebra_of(I);
    auto sp = springer_criterion(A, I.involution(), I.norm(), opt);
    auto G = build_graded(A, I.norm());
    CommandResult r;
    json& j = r.report;
    j["residue"] = aniso_json(*G.B, sp.residue);
    j["graded"] = aniso_json(*G.B, sp.graded);
    j["sigma"] = aniso_json(*A, sp.sigma);
    j["consistent"] = sp.consistent;
    j["sigma_search_clean"] = sp.sigma_search_clean;
    j["sigma_status"] = sp.sigma_status;
    std::ostringstream os;
    auto line = [&](const char* what, const Algebra& B, const AnisotropyResult& a) {
        os << what << ": " << aniso_str(a.verdict);
        if (a.witness) os << "; witness " << B.str(*a.witness);
        if (!a.certificate.empty()) os << " [" << a.certificate << "]";
        os << "\n";
    };
    line("residue involution", *G.B, sp.residue);
    line("graded involution", *G.B, sp.graded);
    os << "residue and graded verdicts " << (sp.consistent ? "agree" : "do not agree") << "\n";
    line("σ on the algebra", *A, sp.sigma);
    os << "bounded search for isotropic vectors of σ: " << (sp.sigma_search_clean ? "none found" : "found") << "\n";
    if (sp.residue.verdict == Verdict::Undecided || sp.graded.verdict == Verdict::Undecided) r.exit_code = kUndecided;
    r.text = os.str();
    return r;
}

CommandResult cmd_graded_dump(const Instance& I, const GaugeOptions&) {
    const auto& A = algebra_of(I);
    auto G = build_graded(A, I.norm());
    CommandResult r;
    json& j = r.report;
    j["dim"] = G.dim();
    j["residue_field"] = G.residue_field()->describe();
    json comps = json::array();
    for (std::size_t c = 0; c < G.components.size(); ++c) {
        json names = json::array();
        for (auto i : G.components[c]) names.push_back(G.B->names()[i]);
        comps.push_back({{"grade", grade_json(G.component_grade[c])}, {"dim", G.components[c].size()}, {"basis", names}});
    }
    j["components"] = comps;
    std::ostringstream os;
    std::optional<GradedInvolution> gs;
    if (I.sigma) {
        try {
            gs = induce_involution(G, *I.sigma);
        } catch (const InvarianceError& e) {
            j["involution_note"] = e.what();
        }
    }
    std::string dump = graded_dump(G, gs ? &*gs : nullptr);
    j["table"] = dump;
    os << dump;
    if (gs) {
        auto c = classify_involution(*G.B, gs->tilde());
        j["involution"] = {{"kind", kind_str(c.kind)},
                           {"type", type_str(c.type)},
                           {"one_in_symd", c.one_in_symd},
                           {"sym_dim", c.sym_dim},
                           {"symd_dim", c.symd_dim}};
        if (I.sigma) {
            auto cs = classify_involution(*A, *I.sigma);
            j["sigma"] = {{"kind", kind_str(cs.kind)}, {"type", type_str(cs.type)}};
            os << "σ on the algebra: kind=" << kind_str(cs.kind) << " type=" << type_str(cs.type) << "\n";
        }
        os << "graded involution: 1~ " << (c.one_in_symd ? "∈" : "∉") << " Symd, kind=" << kind_str(c.kind)
           << " type=" << type_str(c.type) << "\n";
    } else if (I.sigma) {
        os << "graded involution: none (" << j["involution_note"].get<std::string>() << ")\n";
    }
    r.text = os.str();
    return r;
}

CommandResult cmd_compose(const Instance& I, const GaugeOptions&) {
    const auto& A = algebra_of(I);
    if (!I.coarsen_keep) throw InstanceError(I.name + ": compose needs command-options.coarsen_keep");
    auto cv = coarsen_valuation(I.v, *I.coarsen_keep);
    auto c = composed_gauge(A, I.norm(), cv);
    CommandResult r;
    json& j = r.report;
    j["alpha_gauge"] = c.alpha_gauge;
    j["beta_gauge"] = c.beta_gauge;
    j["star_gauge"] = c.star_gauge;
    j["gr_alpha_dim"] = c.gr_alpha_dim;
    j["gr_star_dim"] = c.gr_star_dim;
    j["agree"] = c.alpha_gauge == (c.beta_gauge && c.star_gauge);
    std::ostringstream os;
    os << "coarser valuation: " << cv.w->describe() << "\n";
    os << "gauge: " << (c.alpha_gauge ? "yes" : "no") << "; coarse gauge: " << (c.beta_gauge ? "yes" : "no")
       << "; induced gauge on the coarse graded algebra: " << (c.beta_gauge ? (c.star_gauge ? "yes" : "no") : "n/a") << "\n";
    os << (j["agree"].get<bool>() ? "composition criterion holds" : "composition criterion FAILS") << "\n";
    r.text = os.str();
    return r;
}

CommandResult cmd_extend(const Instance& I, const GaugeOptions& opt) {
    if (!I.ext) throw InstanceError(I.name + ": extend needs an [extension] section");
    const auto& L = *I.ext;
    auto f = separability_idempotent(L);
    CommandResult r;
    json& j = r.report;
    j["kind"] = L.kind;
    j["certificate"] = I.ext_certificate;
    json fam = json::array();
    for (const auto& e : f.family) fam.push_back(element_json(*f.LL, e));
    j["idempotent"] = element_json(*f.LL, f.e);
    j["family"] = fam;
    j["checks"] = {{"maps_to_one", f.maps_to_one}, {"balanced", f.balanced},   {"twisted", f.twisted},
                   {"orthogonal", f.orthogonal},   {"sums_to_one", f.sums_to_one}, {"diagonal_invariant", f.diagonal_invariant},
                   {"value_zero", f.value_zero}};
    j["idempotent_ok"] = f.ok();
    std::ostringstream os;
    os << "extension " << L.big_field()->describe() << " (" << L.kind << ")\n";
    os << "separability idempotent: " << f.LL->str(f.e) << "\n";
    os << "idempotent family checks: " << (f.ok() ? "all hold" : "FAIL") << "\n";
    if (I.A && I.phi && I.sigma) {
        auto inv = extension_invariance(I.A, I.phi, *I.sigma, L);
        j["extended_invariant"] = inv.invariant;
        os << "φ ⊗ v_L " << (inv.invariant ? "is" : "is NOT") << " invariant under σ ⊗ id\n";
    }
    if (I.embedded) {
        auto dec = d_iota_decomposition(*I.embedded);
        json dims = json::array(), psi = json::array();
        for (auto d : dec.dims_over_C) dims.push_back(d);
        for (const auto& p : dec.psi) psi.push_back(value_json(p));
        j["decomposition"] = {{"dims_over_centralizer", dims},
                              {"psi", psi},
                              {"direct_sum", dec.direct_sum},
                              {"psi_homomorphism", dec.psi_homomorphism},
                              {"psi_injective", dec.psi_injective},
                              {"totally_ramified", dec.totally_ramified}};
        auto res = residue_idempotent_structure(*I.embedded);
        json prim = json::array();
        for (std::size_t g = 0; g < res.primitive.size(); ++g) prim.push_back(bool(res.primitive[g]));
        j["residue_idempotents"] = {{"a0_dim", res.a0_dim}, {"primitive", prim}, {"block_dims", res.block_dims},
                                    {"pattern_matches_psi", res.pattern_matches_psi}};
        os << "D_g pieces over the centralizer: dims";
        for (auto d : dec.dims_over_C) os << " " << d;
        os << "; ψ injective: " << (dec.psi_injective ? "yes" : "no") << "; totally ramified: "
           << (dec.totally_ramified ? "yes" : "no") << "\n";
    }
    (void)opt;
    r.text = os.str();
    return r;
}

CommandResult cmd_isotropy(const Instance& I, const GaugeOptions& opt) {
    if (!I.embedded) throw InstanceError(I.name + ": isotropy needs extension.subfield-of");
    const auto& E = *I.embedded;
    auto rep = isotropy_criterion(E, I.involution(), I.twist, opt.aniso);
    auto T = tensor_algebra(E.D.D, E.L.alg);
    CommandResult r;
    json& j = r.report;
    j["verdict"] = rep.verdict;
    j["route"] = rep.route;
    j["sigma_L"] = rep.sigma_L;
    j["twist"] = I.twist;
    if (rep.kappa) j["kappa"] = *rep.kappa;
    if (rep.witness) j["witness"] = element_json(*T, *rep.witness);
    std::ostringstream os;
    os << "σ ⊗ g (g = " << (I.twist ? "nontrivial" : "identity") << "): " << rep.verdict << " via " << rep.route << "\n";
    if (rep.witness) os << "  witness " << T->str(*rep.witness) << "\n";
    if (rep.verdict == "undecided") r.exit_code = kUndecided;
    r.text = os.str();
    return r;
}

CommandResult cmd_descent(const Instance& I, const GaugeOptions&) {
    if (!I.ext || !I.ext_norm) throw InstanceError(I.name + ": descent needs an [extension] and an over-extension value function");
    auto d = descent_equivalence(*I.ext, I.ext_norm);
    CommandResult r;
    json& j = r.report;
    j["a"] = d.a;
    j["b"] = d.b;
    j["c"] = d.c;
    j["agree"] = d.agree();
    j["restriction_is_norm"] = d.restriction_is_norm;
    j["tensor_equal"] = d.tensor_equal;
    j["inequality"] = d.inequality;
    j["b_base"] = d.b_base;
    j["chi_injective"] = d.chi_injective;
    j["groups_add"] = d.groups_add;
    if (d.chi_kernel) j["chi_kernel"] = vec_json(*d.chi_kernel);
    std::ostringstream os;
    os << "restriction to F^n: " << (d.restriction_is_norm ? "a norm" : "NOT a norm") << "\n";
    os << "α = α|V ⊗ v_K: " << (d.tensor_equal ? "yes" : "no") << "; α ≥ α|V ⊗ v_K: " << (d.inequality ? "yes" : "no") << "\n";
    os << "(a) " << d.a << "  (b) " << d.b << "  (c) " << d.c << (d.agree() ? "  agree" : "  DISAGREE") << "\n";
    if (d.chi_kernel) os << "χ kills " << vec_str(*d.chi_kernel) << "\n";
    r.text = os.str();
    return r;
}

bool matches(const json& actual, const ConfigValue& want) {
    switch (want.kind) {
        case ConfigValue::Kind::Boolean: return actual.is_boolean() && actual.get<bool>() == want.flag;
        case ConfigValue::Kind::Integer:
            if (actual.is_number_integer()) return std::to_string(actual.get<long long>()) == want.text;
            return actual.is_string() && actual.get<std::string>() == want.text;
        case ConfigValue::Kind::String:
            if (actual.is_string()) return actual.get<std::string>() == want.text;
            return actual.dump() == want.text;
        case ConfigValue::Kind::Array: {
            if (!actual.is_array() || actual.size() != want.items.size()) return false;
            for (std::size_t i = 0; i < want.items.size(); ++i)
                if (!matches(actual[i], want.items[i])) return false;
            return true;
        }
    }
    return false;
}

std::string want_text(const ConfigValue& w) {
    switch (w.kind) {
        case ConfigValue::Kind::Boolean: return w.flag ? "true" : "false";
        case ConfigValue::Kind::Array: {
            std::string s = "[";
            for (std::size_t i = 0; i < w.items.size(); ++i) s += (i ? ", " : "") + want_text(w.items[i]);
            return s + "]";
        }
        default: return w.text;
    }
}

}  // namespace

CommandResult run_command(const std::string& cmd, const Instance& inst, const RunOptions& ro) {
    GaugeOptions opt = options_for(inst, ro);
    CommandResult r;
    try {
        if (cmd == "check-gauge") r = cmd_check_gauge(inst, opt);
        else if (cmd == "check-invariant") r = cmd_check_invariant(inst, opt);
        else if (cmd == "check-special") r = cmd_check_special(inst, opt);
        else if (cmd == "springer") r = cmd_springer(inst, opt);
        else if (cmd == "graded-dump") r = cmd_graded_dump(inst, opt);
        else if (cmd == "compose") r = cmd_compose(inst, opt);
        else if (cmd == "extend") r = cmd_extend(inst, opt);
        else if (cmd == "isotropy") r = cmd_isotropy(inst, opt);
        else if (cmd == "descent") r = cmd_descent(inst, opt);
        else throw InstanceError("unknown command '" + cmd + "'");
    } catch (const UnsupportedError& e) {
        r = CommandResult{};
        r.report["undecided"] = e.what();
        r.text = std::string("undecided: ") + e.what() + "\n";
        r.exit_code = kUndecided;
    }
    r.report["command"] = cmd;
    r.report["instance"] = inst.name;
    if (r.exit_code == kUndecided && ro.strict) r.text += "strict mode: undecided counts as failure\n";
    return r;
}

std::vector<std::string> suite_files(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    if (!fs::is_directory(dir)) throw InstanceError(dir + ": not a directory");
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".toml") out.push_back(e.path().string());
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        return std::filesystem::path(a).filename() < std::filesystem::path(b).filename();
    });
    return out;
}

CommandResult run_suite(const std::vector<std::string>& files, const RunOptions& ro) {
    CommandResult out;
    json instances = json::object();
    std::ostringstream os;
    std::size_t passed = 0, failed = 0, undecided = 0;
    bool input_error = false;
    for (const auto& path : files) {
        std::string name = std::filesystem::path(path).filename().string();
        json rec;
        std::vector<std::string> problems;
        bool undec = false;
        try {
            Instance I = load_instance(path);
            if (I.suite.empty()) problems.push_back("no commands listed in command-options.suite");
            json reports = json::object();
            for (const auto& cmd : I.suite) {
                auto r = run_command(cmd, I, ro);
                if (r.exit_code == kUndecided) undec = true;
                reports[cmd] = r.report;
            }
            json checks = json::array();
            if (I.cfg.has_section("command-options.expect")) {
                for (const auto& [key, want] : I.cfg.section("command-options.expect")) {
                    auto dot = key.find('.');
                    std::string cmd = key.substr(0, dot);
                    const json* cur = reports.contains(cmd) ? &reports[cmd] : nullptr;
                    std::string rest = dot == std::string::npos ? "" : key.substr(dot + 1);
                    while (cur && !rest.empty()) {
                        auto d = rest.find('.');
                        std::string part = rest.substr(0, d);
                        rest = d == std::string::npos ? "" : rest.substr(d + 1);
                        cur = cur->is_object() && cur->contains(part) ? &(*cur)[part] : nullptr;
                    }
                    bool ok = cur && matches(*cur, want);
                    checks.push_back({{"key", key}, {"expected", want_text(want)}, {"actual", cur ? *cur : json("missing")}, {"pass", ok}});
                    if (!ok)
                        problems.push_back(key + ": expected " + want_text(want) + ", got " + (cur ? cur->dump() : "missing"));
                }
            }
            rec["checks"] = checks;
            rec["reports"] = reports;
        } catch (const std::exception& e) {
            problems.push_back(std::string("input error: ") + e.what());
            input_error = true;
        }
        if (undec && ro.strict) problems.push_back("undecided verdict (strict)");
        bool ok = problems.empty();
        rec["pass"] = ok;
        rec["undecided"] = undec;
        rec["problems"] = problems;
        instances[name] = rec;
        if (!ok) {
            ++failed;
            os << "FAIL " << name << "\n";
            for (const auto& p : problems) os << "  " << p << "\n";
        } else if (undec) {
            ++undecided;
            os << "UNDECIDED " << name << "\n";
        } else {
            ++passed;
            os << "PASS " << name << "\n";
        }
    }
    os << passed << " passed, " << failed << " failed, " << undecided << " undecided\n";
    out.report["command"] = "suite";
    out.report["instances"] = instances;
    out.report["passed"] = passed;
    out.report["failed"] = failed;
    out.report["undecided"] = undecided;
    out.report["pass"] = failed == 0 && undecided == 0;
    out.text = os.str();
    out.exit_code = input_error ? kInputError : (failed || undecided ? kUndecided : kComputed);
    return out;
}

}  // namespace gk
