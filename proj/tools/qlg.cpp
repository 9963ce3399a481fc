#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "output.hpp"
#include "qlg/error.hpp"
#include "qlg/grass/grass.hpp"
#include "qlg/lattice/lattice.hpp"
#include "qlg/qchar/qchar.hpp"
#include "qlg/qloop/qloop.hpp"
#include "qlg/quiver/quiver.hpp"

#ifndef QLG_VERSION
#define QLG_VERSION "dev"
#endif

using json = nlohmann::ordered_json;
using namespace qlg;

namespace {

struct Global {
    std::string out;
    std::string format = "json";
    std::string manifest;
    int threads = 1;
};

int effective_threads(int flag) {
    int t = std::max(1, flag);
    if (const char* env = std::getenv("QLG_THREADS")) {
        try {
            t = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw DomainError("QLG_THREADS must be an integer");
        }
    }
    return t;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            size_t pos = 0;
            out.push_back(std::stoi(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("expected a comma-separated integer list, got \"" + s + "\"");
        }
    }
    return out;
}

int parse_sign(const std::string& s) {
    if (s == "plus" || s == "+") return 1;
    if (s == "minus" || s == "-") return -1;
    throw ParseError("sign must be plus or minus");
}

/// "vertex:degree=n" entries separated by commas.
quiver::DimVec parse_graded_dimvec(const std::string& s) {
    quiver::DimVec v(true);
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':'), eq = tok.find('=');
        if (colon == std::string::npos || eq == std::string::npos || eq < colon)
            throw ParseError("graded dimension entries look like 1:-2=1, got \"" + tok + "\"");
        try {
            v.add(std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1, eq - colon - 1)),
                  std::stol(tok.substr(eq + 1)));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad graded dimension entry \"" + tok + "\"");
        }
    }
    return v;
}

json qchar_terms(const std::map<qchar::Monomial, long>& terms) {
    qchar::QChar c;
    c.terms = terms;
    return qchar::to_json(c);
}

json catalogue_json(const qloop::PresentationSpec& spec) {
    json arr = json::array();
    for (const auto& r : qloop::relation_catalogue(spec))
        arr.push_back({{"name", r.name}, {"statement", r.statement}, {"form", r.form}, {"convention", r.convention},
                       {"note", r.note}});
    return arr;
}

using Runner = std::function<json()>;

struct Leaf {
    CLI::App* app;
    Runner run;
};

void add_quiver(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* grp = app.add_subcommand("quiver", "quiver constructions")->require_subcommand(1);
    auto* d = grp->add_subcommand("derive", "double, triple, framed and graded quivers");
    auto type = std::make_shared<std::string>("A2");
    auto kind = std::make_shared<std::string>("double");
    auto window = std::make_shared<std::string>("0,0");
    auto degrees = std::make_shared<std::vector<std::string>>();
    d->add_option("--type", *type, "A<n>, D<n> or Jordan")->required();
    d->add_option("--kind", *kind, "base, double, triple, framed, framed_double, framed_triple, "
                                   "simply_framed_triple, graded");
    d->add_option("--window", *window, "kmin,kmax for graded quivers");
    d->add_option("--degree", *degrees, "label=degree override (graded), repeatable");
    leaves.push_back({d, [=] {
        auto q = quiver::quiver_by_name(*type);
        auto w = parse_ints(*window);
        if (w.size() != 2) throw ParseError("--window takes kmin,kmax");
        std::optional<quiver::DegreeMap> dm;
        if (!degrees->empty()) {
            dm.emplace();
            for (const auto& s : *degrees) {
                auto eq = s.find('=');
                if (eq == std::string::npos) throw ParseError("--degree takes label=degree");
                dm->by_label[s.substr(0, eq)] = parse_ints(s.substr(eq + 1)).at(0);
            }
        }
        return quiver::to_json(quiver::derive_quiver(q, quiver::parse_kind(*kind), dm, {w[0], w[1]}));
    }});
}

void add_cartan(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* c = app.add_subcommand("cartan", "Cartan matrix, minors and w - c v");
    auto type = std::make_shared<std::string>();
    auto w = std::make_shared<std::string>();
    auto v = std::make_shared<std::string>();
    c->add_option("--type", *type, "quiver name")->required();
    c->add_option("--w", *w, "framing vector, comma separated by vertex");
    c->add_option("--v", *v, "dimension vector, comma separated by vertex");
    leaves.push_back({c, [=] {
        auto q = quiver::quiver_by_name(*type);
        json j;
        j["type"] = q.type;
        j["cartan"] = q.cartan;
        j["leading_minors"] = quiver::leading_minors(q);
        if (!w->empty() || !v->empty()) {
            auto wv = parse_ints(*w), vv = parse_ints(*v);
            if (wv.size() != static_cast<size_t>(q.rank()) || vv.size() != static_cast<size_t>(q.rank()))
                throw DomainError("--w and --v need one entry per vertex");
            quiver::DimVec W(false), V(false);
            for (int i = 0; i < q.rank(); ++i) {
                W.add(i + 1, 0, wv[i]);
                V.add(i + 1, 0, vv[i]);
            }
            auto x = quiver::cartan_apply(q, V, W);
            json e = json::array();
            for (int i = 1; i <= q.rank(); ++i) e.push_back(x.get(i));
            j["w_minus_cv"] = e;
        }
        return j;
    }});
}

void add_qchar(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* grp = app.add_subcommand("qchar", "q-characters")->require_subcommand(1);

    auto* kr = grp->add_subcommand("kr", "Frenkel-Mukhin q-character of KR^l_{i,k}");
    struct KrP {
        std::string type;
        int i = 1, k = 0, l = 1;
        long step_cap = 100000;
        bool summary = false;
    };
    auto p = std::make_shared<KrP>();
    kr->add_option("--type", p->type, "quiver name")->required();
    kr->add_option("--i", p->i)->required();
    kr->add_option("--k", p->k)->required();
    kr->add_option("--l", p->l)->required();
    kr->add_option("--step-cap", p->step_cap);
    kr->add_flag("--summary", p->summary, "only dim and dominant_count");
    leaves.push_back({kr, [=] {
        auto q = quiver::quiver_by_name(p->type);
        auto c = qchar::fm_qcharacter(q, {p->i, p->k, p->l}, p->step_cap);
        json j;
        j["dim"] = c.dim();
        j["dominant_count"] = c.dominant_count();
        if (p->summary) return j;
        j["highest"] = qchar::to_json(*c.highest);
        j["incomplete"] = c.incomplete;
        j["terms"] = qchar::to_json(c);
        return j;
    }});

    auto* hj = grp->add_subcommand("hj-limit", "stabilization of normalized KR characters");
    struct HjP {
        std::string type = "A1";
        int i = 1, k = 0, l_max = 5, cap = 3;
    };
    auto h = std::make_shared<HjP>();
    hj->add_option("--type", h->type);
    hj->add_option("--i", h->i);
    hj->add_option("--k", h->k);
    hj->add_option("--lmax", h->l_max);
    hj->add_option("--cap", h->cap);
    leaves.push_back({hj, [=] {
        auto r = qchar::hj_limit(quiver::quiver_by_name(h->type), h->i, h->k, h->l_max, h->cap);
        json j;
        j["l_max"] = r.l_max;
        j["cap"] = r.cap;
        j["agreement"] = r.agreement;
        j["stable_degree"] = r.stable_degree;
        j["stabilized"] = qchar_terms(r.stabilized);
        return j;
    }});

    auto* tp = grp->add_subcommand("tpkr", "simplicity criterion for tensor products of KR modules");
    struct TpP {
        std::string type = "A1";
        std::vector<std::string> tuples;
        int l = 1;
        std::string variant = "b";
    };
    auto t = std::make_shared<TpP>();
    tp->add_option("--type", t->type);
    tp->add_option("--tuple", t->tuples, "i,k,l; repeatable")->required();
    tp->add_option("--l", t->l)->required();
    tp->add_option("--variant", t->variant, "a or b");
    leaves.push_back({tp, [=] {
        std::vector<qchar::KRTuple> ts;
        for (const auto& s : t->tuples) {
            auto v = parse_ints(s);
            if (v.size() != 3) throw ParseError("--tuple takes i,k,l");
            ts.push_back({v[0], v[1], v[2]});
        }
        qchar::TpkrVariant var;
        if (t->variant == "a")
            var = qchar::TpkrVariant::A;
        else if (t->variant == "b")
            var = qchar::TpkrVariant::B;
        else
            throw ParseError("--variant must be a or b");
        auto q = quiver::quiver_by_name(t->type);
        auto cert = qchar::socle_bound_check(q, ts, t->l, var);
        json j;
        j["criterion"] = qchar::tpkr_criterion(ts, t->l, var);
        json c;
        c["holds"] = cert.holds();
        c["monomial"] = qchar::to_json(cert.m);
        c["socle"] = quiver::to_json(cert.socle);
        c["socle_rows_ok"] = cert.socle_rows_ok;
        c["right_negative_ok"] = cert.right_negative_ok;
        c["closure_ok"] = cert.closure_ok;
        json w = json::array();
        for (const auto& m : cert.witnesses) w.push_back(qchar::to_json(m));
        c["witnesses"] = w;
        j["certificate"] = c;
        return j;
    }});
}

qloop::PresentationSpec presentation(const std::string& preset, const std::string& type, const std::string& w) {
    if (preset == "a1-lattice") {
        auto v = parse_ints(w);
        if (v.size() != 1) throw ParseError("a1-lattice takes a single --w");
        return lattice::a1_presentation(v[0]);
    }
    if (preset == "toroidal") {
        auto v = parse_ints(w);
        if (v.size() != 1) throw ParseError("toroidal takes a single --w");
        return qloop::shifted_toroidal_gl1(v[0]);
    }
    if (preset == "simply-laced") return qloop::shifted_simply_laced(quiver::quiver_by_name(type), parse_ints(w));
    throw ParseError("unknown preset \"" + preset + "\"");
}

void add_relations(CLI::App& app, std::vector<Leaf>& leaves, const Global& g) {
    auto* grp = app.add_subcommand("relations", "shifted quantum loop group relations")->require_subcommand(1);

    auto* cat = grp->add_subcommand("catalogue", "list the relations of a presentation");
    struct CatP {
        std::string preset = "a1-lattice", type = "A1", w = "1";
    };
    auto c = std::make_shared<CatP>();
    cat->add_option("--preset", c->preset, "a1-lattice, simply-laced or toroidal");
    cat->add_option("--type", c->type, "quiver name (simply-laced)");
    cat->add_option("--w", c->w, "shift, one entry per vertex");
    leaves.push_back({cat, [=] { return catalogue_json(presentation(c->preset, c->type, c->w)); }});

    auto* chk = grp->add_subcommand("check", "check relations on an operator table");
    struct ChkP {
        std::string preset = "a1-lattice";
        int w = 1, cap = 2, window = 1;
        std::string psi = "q,chi1";
        std::vector<std::string> only;
        bool instances = false;
    };
    auto p = std::make_shared<ChkP>();
    chk->add_option("--preset", p->preset, "a1-lattice or toroidal-trivial");
    chk->add_option("--w", p->w, "a1-lattice shift");
    chk->add_option("--cap", p->cap, "weight cap of the lattice basis");
    chk->add_option("--window", p->window, "mode window");
    chk->add_option("--psi", p->psi, "toroidal-trivial: coefficients of Psi in u^-1");
    chk->add_option("--only", p->only, "relation names; repeatable");
    chk->add_flag("--instances", p->instances, "emit every instance, not only the summary");
    const Global* gp = &g;
    leaves.push_back({chk, [=] {
        qloop::CheckOptions o;
        o.only = p->only;
        o.threads = effective_threads(gp->threads);
        qloop::RelationReport r;
        if (p->preset == "a1-lattice") {
            if (p->w < 1 || p->cap < 0 || p->window < 0) throw DomainError("need w >= 1, cap >= 0, window >= 0");
            auto rep = lattice::build_operator_table(p->w, p->cap, p->window, o.threads);
            r = qloop::check_relations(lattice::a1_presentation(p->w), rep, p->window, o);
        } else if (p->preset == "toroidal-trivial") {
            std::vector<alg::RatFunc> coeffs;
            std::stringstream ss(p->psi);
            std::string tok;
            while (std::getline(ss, tok, ',')) coeffs.push_back(alg::parse_ratfunc(tok));
            if (coeffs.empty()) throw DomainError("--psi needs at least one coefficient");
            auto spec = qloop::shifted_toroidal_gl1(-(static_cast<int>(coeffs.size()) - 1));
            r = qloop::check_relations(spec, qloop::trivial_table(1, {coeffs}, p->window), p->window, o);
        } else {
            throw ParseError("unknown preset \"" + p->preset + "\"");
        }
        if (!p->instances) return r.summary();
        json j = r.summary();
        j["instances"] = r.to_json();
        return j;
    }});
}

void add_lattice(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* grp = app.add_subcommand("lattice", "A1 fixed-point representation")->require_subcommand(1);

    auto* co = grp->add_subcommand("coeff", "matrix coefficient of A^+_n or A^-_n");
    struct CoP {
        std::string source, target, sign = "plus";
        int n = 0;
    };
    auto c = std::make_shared<CoP>();
    co->add_option("--source", c->source, "tuple, e.g. 1,0")->required();
    co->add_option("--target", c->target, "tuple")->required();
    co->add_option("--n", c->n, "mode")->required();
    co->add_option("--sign", c->sign, "plus (adds a box) or minus (removes one)");
    leaves.push_back({co, [=] {
        auto src = lattice::parse_lambda(c->source), tgt = lattice::parse_lambda(c->target);
        if (src.size() != tgt.size()) throw DomainError("source and target have different lengths");
        bool adjacent = false;
        alg::RatFunc v = parse_sign(c->sign) > 0 ? lattice::coeff_A_plus(src, tgt, c->n, &adjacent)
                                                 : lattice::coeff_A_minus(tgt, src, c->n, &adjacent);
        json j;
        j["source"] = lattice::to_string(src);
        j["target"] = lattice::to_string(tgt);
        j["n"] = c->n;
        j["sign"] = c->sign;
        j["adjacent"] = adjacent;
        j["value"] = v.to_string();
        return j;
    }});

    auto* cm = grp->add_subcommand("commutator", "diagonal of (q-q^-1)[A^+_m, A^-_n] against phi");
    struct CmP {
        std::string lambda;
        int m = 0, n = 0;
    };
    auto k = std::make_shared<CmP>();
    cm->add_option("--lambda", k->lambda, "tuple; its length is w")->required();
    cm->add_option("--m", k->m)->required();
    cm->add_option("--n", k->n)->required();
    leaves.push_back({cm, [=] {
        auto lam = lattice::parse_lambda(k->lambda);
        if (lam.empty()) throw DomainError("lambda needs w >= 1 entries");
        auto r = lattice::commutator_check(static_cast<int>(lam.size()), lam, k->m, k->n);
        json j;
        j["lambda"] = lattice::to_string(lam);
        j["m"] = k->m;
        j["n"] = k->n;
        j["pass"] = r.pass;
        j["by_sum"] = r.by_sum.to_string();
        j["by_series"] = r.by_series.to_string();
        j["offdiagonal_checked"] = r.offdiagonal_checked;
        json f = json::array();
        for (const auto& l : r.offdiagonal_failures) f.push_back(lattice::to_string(l));
        j["offdiagonal_failures"] = f;
        return j;
    }});

    auto* ps = grp->add_subcommand("psi", "psi^+ or psi^- eigenvalue series at a fixed point");
    struct PsP {
        std::string lambda, sign = "plus";
        int trunc = 4;
    };
    auto s = std::make_shared<PsP>();
    ps->add_option("--lambda", s->lambda, "tuple")->required();
    ps->add_option("--sign", s->sign, "plus or minus");
    ps->add_option("--trunc", s->trunc, "number of modes past the leading one");
    leaves.push_back({ps, [=] {
        auto lam = lattice::parse_lambda(s->lambda);
        if (lam.empty()) throw DomainError("lambda needs w >= 1 entries");
        if (s->trunc < 0) throw DomainError("--trunc must be >= 0");
        auto series = lattice::psi_series_a1(lam, parse_sign(s->sign), s->trunc);
        json j;
        j["lambda"] = lattice::to_string(lam);
        j["sign"] = s->sign;
        json cs = json::array();
        for (const auto& [pow, v] : series.nonzero()) cs.push_back({{"power", pow}, {"value", v.to_string()}});
        j["coeffs"] = cs;
        j["central"] = lattice::psi_central(static_cast<int>(lam.size())).to_string();
        return j;
    }});
}

void add_quot(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* grp = app.add_subcommand("quot", "Quot scheme cells")->require_subcommand(1);
    auto* pc = grp->add_subcommand("poincare", "Poincare polynomial from the cell decomposition");
    struct QP {
        int w = 1, v = 0;
        bool punctual = false;
    };
    auto p = std::make_shared<QP>();
    pc->add_option("--w", p->w)->required();
    pc->add_option("--v", p->v)->required();
    pc->add_flag("--punctual", p->punctual);
    leaves.push_back({pc, [=] {
        auto r = lattice::quot_poincare(p->w, p->v, p->punctual);
        json j;
        j["poly"] = r.to_string();
        j["euler"] = r.euler;
        return j;
    }});
}

void add_grass(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* grp = app.add_subcommand("grass", "graded quiver Grassmannians")->require_subcommand(1);
    struct GP {
        std::string type = "A1";
        int i = 1, k = 0, l = 1;
        std::string v;
    };

    auto* en = grp->add_subcommand("enum", "graded submodules of I^l_{i,k}");
    auto e = std::make_shared<GP>();
    en->add_option("--type", e->type);
    en->add_option("--i", e->i);
    en->add_option("--k", e->k);
    en->add_option("--l", e->l);
    en->add_option("--v", e->v, "graded dimension vector, e.g. 1:0=1,1:-2=1");
    leaves.push_back({en, [=] {
        auto M = grass::build_injective(quiver::quiver_by_name(e->type), e->i, e->k, e->l);
        std::optional<quiver::DimVec> v;
        if (!e->v.empty()) v = parse_graded_dimvec(e->v);
        auto subs = grass::enumerate_graded_submodules(M, v);
        json j;
        j["module"] = M.to_json();
        json ver;
        for (const auto& [name, ok] : M.verify()) ver[name] = ok;
        j["verify"] = ver;
        j["count"] = subs.size();
        json cs = json::array();
        for (const auto& s : subs) {
            json b = json::array();
            for (int x : s.basis) b.push_back(M.labels[x]);
            cs.push_back({{"v", quiver::to_json(s.v)}, {"basis", b}, {"verified", s.verified()}});
        }
        j["certificates"] = cs;
        return j;
    }});

    auto* ek = grp->add_subcommand("euler-vs-kr", "Grassmannian point count against dim KR^l_{i,k}");
    auto k = std::make_shared<GP>();
    ek->add_option("--type", k->type);
    ek->add_option("--i", k->i);
    ek->add_option("--k", k->k);
    ek->add_option("--l", k->l);
    leaves.push_back({ek, [=] { return grass::euler_vs_kr(quiver::quiver_by_name(k->type), k->i, k->k, k->l).to_json(); }});
}

json parameters_of(const CLI::App* leaf) {
    json j = json::object();
    for (const auto* opt : leaf->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") continue;
        auto res = opt->results();
        std::string name = opt->get_name();
        if (res.size() == 1)
            j[name] = res[0];
        else
            j[name] = res;
    }
    return j;
}

std::string command_path(const CLI::App* leaf) {
    std::string s;
    for (const CLI::App* a = leaf; a && a->get_parent(); a = a->get_parent()) s = a->get_name() + (s.empty() ? "" : " ") + s;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for shifted quantum loop groups, q-characters and quiver Grassmannians", "qlg"};
    app.set_version_flag("--version", QLG_VERSION);
    app.set_config("--config", "", "TOML/INI file with option values");
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--out", g.out, "write the result to a file instead of standard output");
    app.add_option("--format", g.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--threads", g.threads, "worker cap; QLG_THREADS overrides")->check(CLI::PositiveNumber);
    app.add_option("--manifest", g.manifest, "write a run manifest (JSON) to this file");

    std::vector<Leaf> leaves;
    add_quiver(app, leaves);
    add_cartan(app, leaves);
    add_qchar(app, leaves);
    add_relations(app, leaves, g);
    add_lattice(app, leaves);
    add_quot(app, leaves);
    add_grass(app, leaves);
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* s2 : sub->get_subcommands({})) s2->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const Leaf* leaf = nullptr;
    for (const auto& l : leaves)
        if (l.app->parsed()) leaf = &l;
    if (!leaf) {
        std::cerr << "no command given; see --help\n";
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    std::string text;
    int code = 0;
    try {
        json result = leaf->run();
        text = g.format == "table" ? cli::render_table(result) : result.dump() + "\n";
    } catch (const DomainError& e) {
        json err{{"error", {{"kind", dynamic_cast<const ParseError*>(&e) ? "parse" : "domain"}, {"message", e.what()}}}};
        text = err.dump() + "\n";
        code = 1;
    } catch (const std::exception& e) {
        json err{{"error", {{"kind", "internal"}, {"message", e.what()}}}};
        text = err.dump() + "\n";
        code = 1;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!g.out.empty() && code == 0) {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) {
            std::cout << json{{"error", {{"kind", "io"}, {"message", "cannot write " + g.out}}}}.dump() << "\n";
            return 1;
        }
        f << text;
    } else {
        std::cout << text;
    }

    if (!g.manifest.empty()) {
        json m;
        m["command"] = command_path(leaf->app);
        m["parameters"] = parameters_of(leaf->app);
        m["version"] = QLG_VERSION;
        m["exit_code"] = code;
        m["wall_clock_seconds"] = secs;
        m["output_sha256"] = cli::sha256_hex(text);
        std::ofstream f(g.manifest, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write manifest " << g.manifest << "\n";
            return 1;
        }
        f << m.dump(2) << "\n";
    }
    return code;
}
