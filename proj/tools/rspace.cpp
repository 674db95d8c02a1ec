// Command-line front end: audit, galvin, ramsey, reduce, enumerate, verify.
//
// Exit status: 0 success (bounded-pass, Alt1/Alt2, found), 1 counterexample or
// lower bound or rejected certificate, 2 usage or malformed input, 3
// inconclusive or exhausted, 4 ceiling refusal.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rspace/rspace.hpp"

using namespace rspace;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, inconclusive = 3, ceiling = 4 };

struct SpaceArgs {
    std::string space = "ellentuck";
    std::uint32_t ground = 8;
    std::uint32_t q = 2;
    std::size_t cols = 4;
    std::size_t domain = 6;
};

struct Output {
    std::string format = "text";
    std::string path;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_space_options(CLI::App* app, SpaceArgs& a) {
    app->add_option("--space", a.space, "ellentuck, matrix or partition")
        ->check(CLI::IsMember({"ellentuck", "matrix", "partition"}));
    app->add_option("--ground", a.ground, "Ellentuck ground set size");
    app->add_option("--q", a.q, "field order (prime)");
    app->add_option("--max-cols,--cols", a.cols, "matrix column count");
    app->add_option("--domain", a.domain, "partition domain size");
}

void add_output_options(CLI::App* app, Output& o) {
    app->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app->add_option("--output,-o", o.path, "write to a file instead of stdout");
}

template <class F>
auto with_space(const std::string& name, const FileHeader& h, F&& f) {
    if (name == "ellentuck") return f(EllentuckSpace(static_cast<std::uint32_t>(h.number("ground"))));
    if (name == "matrix")
        return f(MatrixSpace(static_cast<std::uint32_t>(h.number("q")), static_cast<std::size_t>(h.number("cols"))));
    if (name == "partition") return f(PartitionSpace(static_cast<std::size_t>(h.number("domain"))));
    throw UsageError("unknown space '" + name + "'");
}

FileHeader header_of(const SpaceArgs& a) {
    FileHeader h{a.space, {}};
    if (a.space == "ellentuck") h.params["ground"] = std::to_string(a.ground);
    if (a.space == "matrix") {
        h.params["q"] = std::to_string(a.q);
        h.params["cols"] = std::to_string(a.cols);
    }
    if (a.space == "partition") h.params["domain"] = std::to_string(a.domain);
    return h;
}

std::string descriptor(const FileHeader& h) {
    std::string out = h.space;
    for (const auto& [k, v] : h.params)
        if (k != "bound" && k != "s" && k != "k") out += " " + k + "=" + v;
    return out;
}

json params_json(const FileHeader& h) {
    json p = json::object();
    for (const auto& [k, v] : h.params) p[k] = v;
    return p;
}

std::optional<double> env_ceiling() {
    const char* v = std::getenv("RSPACE_CEILING");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    const double d = std::strtod(v, &end);
    if (*end != '\0' || !(d > 0)) throw UsageError(std::string("RSPACE_CEILING must be a positive number, got '") + v + "'");
    return d;
}

double pick_ceiling(double flag, double fallback) {
    if (flag > 0) return flag;
    if (auto e = env_ceiling()) return *e;
    return fallback;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string csv_row(const std::string& instance, const std::string& outcome, const std::string& value,
                    std::uint64_t checked, double seconds) {
    std::ostringstream out;
    out << "instance,outcome,value,count_checked,seconds\n"
        << csv_field(instance) << ',' << csv_field(outcome) << ',' << csv_field(value) << ',' << checked << ','
        << seconds << '\n';
    return out.str();
}

void emit(const Output& o, const std::string& text) {
    if (o.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.path);
    if (!f) throw UsageError("cannot write " + o.path);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// "-" reads stdin; inline text uses '|' as the line separator.
ItemFile read_item_source(const std::string& path, const std::string& inline_text) {
    if (path.empty() && inline_text.empty()) throw UsageError("no input: give a file or --inline text");
    if (!inline_text.empty()) {
        std::string text = inline_text;
        std::replace(text.begin(), text.end(), '|', '\n');
        return parse_item_text(text);
    }
    if (path == "-") return parse_item_file(std::cin);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    return parse_item_file(in);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// audit -----------------------------------------------------------------

// Self-test wrapper: r_0 returns the first atom instead of the empty approximation.
template <RamseySpace S>
struct FaultyCut {
    using approx_type = typename S::approx_type;
    S base;

    std::string_view name() const { return base.name(); }
    approx_type empty() const { return base.empty(); }
    std::size_t length(const approx_type& a) const { return base.length(a); }
    approx_type cut(const approx_type& a, std::size_t n) const {
        return n == 0 && base.length(a) > 0 ? base.cut(a, 1) : base.cut(a, n);
    }
    bool fin_leq(const approx_type& a, const approx_type& b) const { return base.fin_leq(a, b); }
    std::vector<approx_type> fin_below(const approx_type& a) const { return base.fin_below(a); }
    bool leq(const approx_type& a, const approx_type& b) const { return base.leq(a, b); }
    approx_type top() const { return base.top(); }
    bool is_element(const approx_type& a) const { return base.is_element(a); }
    std::vector<approx_type> reducts(const approx_type& a) const { return base.reducts(a); }
    std::string serialize(const approx_type& a) const { return base.serialize(a); }
    approx_type parse(std::string_view t) const { return base.parse(t); }
    double universe_estimate() const
        requires requires(const S& s) { s.universe_estimate(); }
    {
        return base.universe_estimate();
    }
};

struct AuditArgs {
    SpaceArgs space;
    Output out;
    std::optional<std::size_t> depth, max_len;
    bool no_a6 = false;
    bool fault = false;
    double ceiling = 0;
};

int cmd_audit(const AuditArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const FileHeader h = header_of(a.space);
    AuditBounds b;
    const bool ell = a.space.space == "ellentuck";
    b.max_depth = a.depth.value_or(ell ? 4 : 3);
    b.max_len = a.max_len.value_or(2);
    b.check_a6 = ell && !a.no_a6;
    b.universe_ceiling = pick_ceiling(a.ceiling, b.universe_ceiling);
    const auto report = with_space(h.space, h, [&](const auto& s) {
        if (a.fault) return audit_axioms(FaultyCut<std::decay_t<decltype(s)>>{s}, b);
        return audit_axioms(s, b);
    });
    const bool pass = report.all_pass();
    std::uint64_t instances = 0;
    for (const auto& v : report.verdicts) instances += v.instances;
    if (a.out.format == "json") {
        json j{{"command", "audit"}, {"space", report.space}, {"params", params_json(h)},
               {"bounds", {{"max_depth", b.max_depth}, {"max_len", b.max_len}, {"check_a6", b.check_a6}}},
               {"outcome", pass ? "bounded-pass" : "counterexample"}};
        j["verdicts"] = json::array();
        for (const auto& v : report.verdicts)
            j["verdicts"].push_back(
                {{"axiom", v.axiom}, {"status", to_string(v.status)}, {"instances", v.instances}, {"witness", v.witness}});
        j["depth_bound"] = {{"checked", report.depth_bound_checked}, {"violations", report.depth_bound_violations}};
        emit(a.out, dump(j));
    } else if (a.out.format == "csv") {
        emit(a.out, csv_row("audit " + descriptor(h) + " depth=" + std::to_string(b.max_depth), pass ? "bounded-pass" : "counterexample",
                            std::to_string(report.verdicts.size()), instances, since(t0)));
    } else {
        emit(a.out, to_text(report));
    }
    return pass ? ok : negative;
}

// galvin ----------------------------------------------------------------

struct GalvinArgs {
    std::string family, inline_text;
    Output out;
    std::size_t horizon = 8;
    double ceiling = 0;
};

int cmd_galvin(const GalvinArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    ItemFile file;
    try {
        file = read_item_source(a.family, a.inline_text);
    } catch (const error& e) {
        throw UsageError(std::string("malformed family file: ") + e.what());
    }
    return with_space(file.header.space, file.header, [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        std::optional<FrontFamily<S>> f;
        try {
            f.emplace(load_family(s, file));
        } catch (const error& e) {
            throw UsageError(std::string("malformed family file: ") + e.what());
        }
        GalvinParams params;
        params.horizon = a.horizon;
        params.ceiling = pick_ceiling(a.ceiling, params.ceiling);
        const Stem<S> top(s, s.top());
        const auto r = galvin_search(s, top, *f, params);
        const auto cert = galvin_certificate(s, *f, r, descriptor(file.header));
        const std::string stem = r.stem ? s.serialize(r.stem->element()) : std::string();
        if (a.out.format == "json") {
            json j{{"command", "galvin"}, {"space", file.header.space}, {"params", params_json(file.header)},
                   {"family_size", f->size()}, {"family_bound", f->length_bound()}, {"horizon", params.horizon},
                   {"outcome", to_string(r.outcome)}};
            j["stem"] = r.stem ? json(stem) : json(nullptr);
            j["hits"] = json::array();
            for (const auto& [x, n] : r.hits) j["hits"].push_back({{"approximation", s.serialize(x)}, {"length", n}});
            j["diagnostic"] = r.diagnostic;
            j["certificate"] = cert;
            emit(a.out, dump(j));
        } else if (a.out.format == "csv") {
            emit(a.out, csv_row("galvin " + descriptor(file.header) + " family=" + std::to_string(f->size()),
                                std::string(to_string(r.outcome)), stem, f->size(), since(t0)));
        } else {
            emit(a.out, cert);
        }
        return r.outcome == Alternative::inconclusive ? int(inconclusive) : int(ok);
    });
}

// ramsey ----------------------------------------------------------------

struct RamseyArgs {
    std::string kind;
    SpaceArgs space;
    Output out;
    std::size_t k = 1, n = 1, m = 1, bound = 8;
    unsigned s = 2;
    std::string mode = "exhaustive";
    unsigned jobs = 1;
    double ceiling = 0;
    std::uint64_t budget = 0;
    bool verify = false;
};

int cmd_ramsey(const RamseyArgs& a) {
    RamseyOptions o;
    o.mode = parse_search_mode(a.mode);
    o.limits.jobs = a.jobs;
    o.limits.ceiling = pick_ceiling(a.ceiling, o.limits.ceiling);
    if (a.budget) o.limits.node_budget = a.budget;
    WitnessResult r;
    if (a.kind == "classical") {
        r = classical_ramsey_number(a.k, a.n, a.s, a.bound, o);
    } else if (a.kind == "glr") {
        r = glr_witness(a.space.q, a.k, a.n, a.s, a.bound, o);
    } else if (a.kind == "paramset") {
        r = gr_paramset_witness(a.k, a.m, a.s, a.bound, o);
    } else {
        const FileHeader h = header_of(a.space);
        r = with_space(h.space, h, [&](const auto& sp) { return finite_ramsey_witness(sp, a.k, a.n, a.s, a.bound, o); });
    }
    const auto cert = ramsey_certificate(r);
    std::optional<ReplayResult> check;
    if (a.verify) check = verify_witness(cert);
    if (a.out.format == "json") {
        json inst = json::object();
        for (const auto& [k, v] : r.instance) inst[k] = v;
        json j{{"command", "ramsey"}, {"kind", r.kind}, {"instance", inst}, {"mode", to_string(r.mode)},
               {"outcome", to_string(r.outcome)}, {"value", r.value}, {"checked", r.checked}};
        j["bad_size"] = r.bad_size ? json(*r.bad_size) : json(nullptr);
        j["bad_coloring"] = json::array();
        for (std::size_t i = 0; i < r.bad_items.size(); ++i)
            j["bad_coloring"].push_back({{"item", r.bad_items[i]}, {"color", r.bad_colors[i]}});
        j["diagnostic"] = r.diagnostic;
        j["verified"] = check ? json(check->ok) : json(nullptr);
        j["certificate"] = cert;
        emit(a.out, dump(j));
    } else if (a.out.format == "csv") {
        std::string instance = r.kind;
        for (const auto& [k, v] : r.instance) instance += " " + k + "=" + v;
        emit(a.out, csv_row(instance, std::string(to_string(r.outcome)), std::to_string(r.value), r.checked, r.seconds));
    } else {
        std::string text = cert;
        if (check) text += std::string("verify ") + (check->ok ? "ok" : "rejected " + check->reason) + "\n";
        emit(a.out, text);
    }
    if (check && !check->ok) return negative;
    switch (r.outcome) {
        case WitnessOutcome::found: return ok;
        case WitnessOutcome::lower_bound: return negative;
        case WitnessOutcome::exhausted: return inconclusive;
    }
    return inconclusive;
}

// reduce ----------------------------------------------------------------

struct ReduceArgs {
    std::string coloring, inline_text;
    Output out;
    std::size_t horizon = 8;
    double ceiling = 0;
};

int cmd_reduce(const ReduceArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    ItemFile file;
    try {
        file = read_item_source(a.coloring, a.inline_text);
    } catch (const error& e) {
        throw UsageError(std::string("malformed coloring file: ") + e.what());
    }
    return with_space(file.header.space, file.header, [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        using A = typename S::approx_type;
        std::optional<Coloring<S>> c;
        std::size_t k = 0;
        try {
            c.emplace(load_coloring(s, file));
            k = static_cast<std::size_t>(file.header.number("k"));
        } catch (const error& e) {
            throw UsageError(std::string("malformed coloring file: ") + e.what());
        }
        GalvinParams params;
        params.horizon = a.horizon;
        params.ceiling = pick_ceiling(a.ceiling, params.ceiling);
        const Stem<S> top(s, s.top());
        const std::function<unsigned(const A&)> fn = [&](const A& x) {
            try {
                return (*c)(x);
            } catch (const out_of_range_error&) {
                throw UsageError("coloring file does not color " + s.serialize(x));
            }
        };
        const auto r = abs_ramsey_reduce(s, top, k, fn, c->colors(), params);
        const std::string outcome = r.stem ? "found" : "inconclusive";
        const std::string stem = r.stem ? s.serialize(r.stem->element()) : std::string();
        if (a.out.format == "json") {
            json j{{"command", "reduce"}, {"space", file.header.space}, {"params", params_json(file.header)},
                   {"outcome", outcome}};
            j["stem"] = r.stem ? json(stem) : json(nullptr);
            j["color"] = r.color;
            j["steps"] = r.steps;
            j["diagnostic"] = r.diagnostic;
            emit(a.out, dump(j));
        } else if (a.out.format == "csv") {
            emit(a.out, csv_row("reduce " + descriptor(file.header) + " k=" + std::to_string(k), outcome, stem,
                                c->domain().size(), since(t0)));
        } else {
            std::ostringstream t;
            t << "reduce " << descriptor(file.header) << " k=" << k << " s=" << c->colors() << '\n';
            for (const auto& step : r.steps) t << "step " << step << '\n';
            t << "outcome " << outcome << '\n';
            if (r.stem) t << "stem " << stem << "\ncolor " << r.color << '\n';
            if (!r.diagnostic.empty()) t << "diagnostic " << r.diagnostic << '\n';
            emit(a.out, t.str());
        }
        return r.stem ? int(ok) : int(inconclusive);
    });
}

// enumerate -------------------------------------------------------------

struct EnumerateArgs {
    std::string what;
    SpaceArgs space;
    Output out;
    std::size_t k = 1, m = 1, n = 1, len = 1;
};

int cmd_enumerate(const EnumerateArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> items;
    std::string instance;
    if (a.what == "rre") {
        for (const auto& e : enumerate_rre(a.k, a.m, a.space.q)) items.push_back(to_string(e));
        instance = "rre q=" + std::to_string(a.space.q) + " k=" + std::to_string(a.k) + " m=" + std::to_string(a.m);
    } else if (a.what == "partitions") {
        for (const auto& p : enumerate_partitions(a.n, a.k)) items.push_back(to_string(p));
        instance = "partitions n=" + std::to_string(a.n) + " k=" + std::to_string(a.k);
    } else {
        const FileHeader h = header_of(a.space);
        with_space(h.space, h, [&](const auto& s) {
            for (const auto& x : ar_level(s, s.top(), a.len)) items.push_back(s.serialize(x));
            return 0;
        });
        instance = "ar " + descriptor(h) + " len=" + std::to_string(a.len);
    }
    if (a.out.format == "json") {
        emit(a.out, dump(json{{"command", "enumerate"}, {"instance", instance}, {"count", items.size()}, {"items", items}}));
    } else if (a.out.format == "csv") {
        emit(a.out, csv_row(instance, "ok", std::to_string(items.size()), items.size(), since(t0)));
    } else {
        std::string t;
        for (const auto& i : items) t += i + "\n";
        emit(a.out, t);
    }
    return ok;
}

// verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string certificate, family;
};

int cmd_verify(const VerifyArgs& a) {
    const auto text = read_text(a.certificate);
    ReplayResult r;
    if (text.rfind("certificate galvin", 0) == 0) {
        if (a.family.empty()) throw UsageError("galvin certificates need --family");
        ItemFile file;
        try {
            file = read_item_source(a.family, "");
        } catch (const error& e) {
            throw UsageError(std::string("malformed family file: ") + e.what());
        }
        r = with_space(file.header.space, file.header, [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            const auto f = load_family(s, file);
            return replay_galvin_certificate(s, Stem<S>(s, s.top()), f, text);
        });
    } else {
        r = verify_witness(text);
    }
    std::cout << (r.ok ? "ok" : "rejected: " + r.reason) << '\n';
    return r.ok ? ok : negative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramsey-space audits, forcing searches and finite Ramsey witnesses"};
    app.require_subcommand(1);

    AuditArgs audit;
    auto* a = app.add_subcommand("audit", "check axioms A1-A6 on a finite truncation");
    add_space_options(a, audit.space);
    add_output_options(a, audit.out);
    a->add_option("--depth", audit.depth, "largest approximation index examined");
    a->add_option("--max-len", audit.max_len, "longest approximation a examined");
    a->add_flag("--no-a6", audit.no_a6, "skip the A6 audit");
    a->add_option("--ceiling", audit.ceiling, "largest truncated universe audited");
    a->add_flag("--fault", audit.fault, "self-test: audit a copy of the space with a broken r_0")->group("");

    GalvinArgs galvin;
    auto* g = app.add_subcommand("galvin", "run the dichotomy search for a family file");
    auto* gf = g->add_option("--family", galvin.family, "family file, or - for stdin");
    g->add_option("--inline", galvin.inline_text, "family text with '|' between lines")->excludes(gf);
    g->add_option("--horizon", galvin.horizon, "forcing horizon");
    g->add_option("--ceiling", galvin.ceiling, "reduct enumeration ceiling");
    add_output_options(g, galvin.out);

    RamseyArgs ramsey;
    auto* r = app.add_subcommand("ramsey", "compute a finite Ramsey witness");
    r->add_option("kind", ramsey.kind, "classical, finite, glr or paramset")
        ->required()
        ->check(CLI::IsMember({"classical", "finite", "glr", "paramset"}));
    add_space_options(r, ramsey.space);
    r->add_option("--k", ramsey.k);
    r->add_option("--n", ramsey.n);
    r->add_option("--m", ramsey.m);
    r->add_option("--s", ramsey.s, "number of colors");
    r->add_option("--bound", ramsey.bound, "largest size tried");
    r->add_option("--mode", ramsey.mode)->check(CLI::IsMember({"exhaustive", "backtracking"}));
    r->add_option("--jobs", ramsey.jobs, "threads for exhaustive search")->check(CLI::Range(1u, 256u));
    r->add_option("--ceiling", ramsey.ceiling, "exhaustive coloring ceiling");
    r->add_option("--budget", ramsey.budget, "backtracking node budget");
    r->add_flag("--verify", ramsey.verify, "replay the certificate through the independent checker");
    add_output_options(r, ramsey.out);

    ReduceArgs reduce;
    auto* rd = app.add_subcommand("reduce", "find a stem on which a coloring file is monochromatic");
    auto* rc = rd->add_option("--coloring", reduce.coloring, "coloring file, or - for stdin");
    rd->add_option("--inline", reduce.inline_text, "coloring text with '|' between lines")->excludes(rc);
    rd->add_option("--horizon", reduce.horizon, "forcing horizon");
    rd->add_option("--ceiling", reduce.ceiling, "reduct enumeration ceiling");
    add_output_options(rd, reduce.out);

    EnumerateArgs enumerate;
    auto* e = app.add_subcommand("enumerate", "list echelon matrices, partitions or approximations");
    e->add_option("what", enumerate.what, "rre, partitions or ar")
        ->required()
        ->check(CLI::IsMember({"rre", "partitions", "ar"}));
    add_space_options(e, enumerate.space);
    e->add_option("--k", enumerate.k);
    e->add_option("--m", enumerate.m);
    e->add_option("--n", enumerate.n);
    e->add_option("--len", enumerate.len);
    add_output_options(e, enumerate.out);

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "check a ramsey or galvin certificate");
    v->add_option("certificate", verify.certificate, "certificate file")->required();
    v->add_option("--family", verify.family, "family file for galvin certificates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return usage;
    }

    try {
        if (*a) return cmd_audit(audit);
        if (*g) return cmd_galvin(galvin);
        if (*r) return cmd_ramsey(ramsey);
        if (*rd) return cmd_reduce(reduce);
        if (*e) return cmd_enumerate(enumerate);
        if (*v) return cmd_verify(verify);
    } catch (const ceiling_exceeded_error& err) {
        std::cerr << "refused: " << err.what() << '\n';
        return ceiling;
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return usage;
    } catch (const error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return usage;
    }
    return usage;
}
