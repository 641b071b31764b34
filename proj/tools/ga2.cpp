/*
   Copyright 2026 The ga2 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>
#include <fstream>
#include <ga2/ga2.hpp>
#include <iostream>

namespace {

using namespace ga2;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

/// Human lines or machine key=value records (--machine), same data either
/// way; record keys keep insertion order.
struct Output {
    bool machine = false;

    static std::string squash(const std::string& v) {
        std::string out;
        for (char c : v)
            if (c != ' ') out += c;
        return out;
    }

    void line(const std::string& human,
              const std::vector<std::pair<std::string, std::string>>& kv) const {
        if (!machine) {
            std::cout << human << "\n";
            return;
        }
        std::string out;
        for (const auto& [k, v] : kv) {
            if (!out.empty()) out += " ";
            out += k + "=" + squash(v);
        }
        std::cout << out << "\n";
    }
};

/// `@path` arguments are read from file, anything else is used verbatim.
std::string load_text(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw ParseError("cannot read file '" + arg.substr(1) + "'", 0);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return text;
}

bool looks_like_map_expr(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '(';
    }
    return false;
}

/// Inputs are either `(expr, expr)` map expressions or serialized words
/// (one letter per line / ';'-separated).
NormalForm input_nf(const std::string& arg, const FieldCtx& ctx) {
    std::string text = load_text(arg);
    if (looks_like_map_expr(text)) return normal_form_of(parse_map_expr(text, ctx));
    return normalize(parse_word(text, ctx));
}

PolyMap input_map(const std::string& arg, const FieldCtx& ctx) {
    std::string text = load_text(arg);
    if (looks_like_map_expr(text)) return parse_map_expr(text, ctx);
    return word_to_polymap(parse_word(text, ctx));
}

void print_nf(const Output& out, const NormalForm& nf) {
    const BasicMap& b = nf.basic();
    if (!b.is_identity() || nf.letters().empty())
        out.line("B " + b.alpha().to_string() + " " + b.beta().to_string() + " " +
                     b.gamma().to_string() + " " + b.u().to_string() + " " +
                     b.v().to_string(),
                 {{"kind", "B"},
                  {"alpha", b.alpha().to_string()},
                  {"beta", b.beta().to_string()},
                  {"gamma", b.gamma().to_string()},
                  {"u", b.u().to_string()},
                  {"v", b.v().to_string()}});
    for (const auto& l : nf.letters()) {
        if (is_a_letter(l)) {
            const auto& a = std::get<CosetRepA>(l);
            out.line("A " + a.beta.to_string(),
                     {{"kind", "A"}, {"beta", a.beta.to_string()}});
        } else {
            const auto& e = std::get<CosetRepE>(l);
            out.line("E " + e.p.to_string(), {{"kind", "E"}, {"poly", e.p.to_string()}});
        }
    }
}

void print_word(const Output& out, const std::string& label, const Word& w) {
    out.line(label + " {", {{"record", label}, {"letters", std::to_string(w.size())}});
    for (const auto& line : detail::split_letter_lines(serialize(w)))
        out.line("  " + line, {{"letter", line}});
    out.line("}", {});
}

void print_cycle_stats(const Output& out, const CycleStats& st) {
    for (const auto& [len, count] : st.length_counts)
        out.line("CYCLE len=" + std::to_string(len) + " count=" + std::to_string(count),
                 {{"record", "CYCLE"},
                  {"len", std::to_string(len)},
                  {"count", std::to_string(count)}});
    out.line("FIXED " + std::to_string(st.fixed_point_count),
             {{"record", "FIXED"}, {"count", std::to_string(st.fixed_point_count)}});
}

struct Options {
    std::string field = "Q";
    unsigned threads = 1;
    unsigned long cap = 64;
    bool cross_check = false;
    bool allow_large_p = false;
    std::string input, input2, reversor, symmetry, at;
    std::string type, form, half, ehat, ebar, alpha = "0", gamma = "1";
    std::vector<std::string> epolys, abetas;
};

ElementaryMap elementary_from(const std::string& arg, const FieldCtx& ctx) {
    LetterClass cls = classify_letter(input_map(arg, ctx));
    if (std::holds_alternative<ElementaryMap>(cls)) return std::get<ElementaryMap>(cls);
    if (std::holds_alternative<CosetRepE>(cls))
        return std::get<CosetRepE>(cls).to_elementary();
    if (std::holds_alternative<BasicMap>(cls))
        return std::get<BasicMap>(cls).to_elementary();
    throw InvalidLetters("expected an elementary map");
}

int run_decompose(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    print_nf(out, normal_form_of(parse_map_expr(load_text(opt.input), ctx)));
    return kExitOk;
}

int run_normalform(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    print_nf(out, input_nf(opt.input, ctx));
    return kExitOk;
}

int run_length(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    std::size_t len = length(input_nf(opt.input, ctx));
    out.line("LENGTH " + std::to_string(len), {{"length", std::to_string(len)}});
    return kExitOk;
}

int run_polydeg(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    std::vector<int> pd = poly_degree(input_nf(opt.input, ctx));
    std::string seq;
    for (int d : pd) {
        if (!seq.empty()) seq += ",";
        seq += std::to_string(d);
    }
    out.line("PD (" + seq + ")", {{"pd", seq}});
    return kExitOk;
}

int run_degree(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    long d = nf_degree(input_nf(opt.input, ctx));
    out.line("DEGREE " + std::to_string(d), {{"degree", std::to_string(d)}});
    return kExitOk;
}

int run_cyclereduce(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    NormalForm nf = input_nf(opt.input, ctx);
    CRStatus st = cyclically_reduce(nf);
    if (std::holds_alternative<CRBasic>(st)) {
        out.line("STATUS basic", {{"status", "basic"}});
        print_nf(out, NormalForm(std::get<CRBasic>(st).b, {}));
        return kExitOk;
    }
    if (std::holds_alternative<CRInFactor>(st)) {
        const auto& fac = std::get<CRInFactor>(st);
        out.line("STATUS in-factor", {{"status", "in-factor"}});
        Word lw(ctx);
        lw.push_inner(fac.letter);
        print_word(out, "LETTER", lw);
        print_word(out, "CONJUGATOR", fac.conjugator);
        return kExitOk;
    }
    const auto& red = std::get<CRReduced>(st);
    out.line("STATUS cyclically-reduced", {{"status", "cyclically-reduced"}});
    print_nf(out, red.crnf);
    print_word(out, "CONJUGATOR", red.conjugator);
    return kExitOk;
}

int run_order(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    auto ord = order_of_element(input_nf(opt.input, ctx), opt.cap);
    if (!ord) {
        out.line("ORDER unknown", {{"order", "unknown"}});
        return kExitNegative;
    }
    std::string s = ord->is_finite ? std::to_string(ord->n) : "infinite";
    out.line("ORDER " + s, {{"order", s}});
    return kExitOk;
}

int run_conjtest(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    NormalForm nf1 = input_nf(opt.input, ctx), nf2 = input_nf(opt.input2, ctx);
    CRStatus st1 = cyclically_reduce(nf1), st2 = cyclically_reduce(nf2);
    bool cr1 = std::holds_alternative<CRReduced>(st1);
    bool cr2 = std::holds_alternative<CRReduced>(st2);
    if (cr1 != cr2) {
        // A CR element is never conjugate to a factor element.
        out.line("NOT-CONJUGATE", {{"conjugate", "no"}});
        return kExitNegative;
    }
    if (!cr1)
        throw Undecided("conjugacy is decided for cyclically reducible elements only");
    const auto& r1 = std::get<CRReduced>(st1);
    const auto& r2 = std::get<CRReduced>(st2);
    auto h0 = crnf_conjugate(r1.crnf, r2.crnf);
    if (!h0) {
        out.line("NOT-CONJUGATE", {{"conjugate", "no"}});
        return kExitNegative;
    }
    Word h = r2.conjugator.concat(*h0).concat(r1.conjugator.inverse());
    if (normalize(h.concat(nf1.to_word()).concat(h.inverse())) != nf2)
        throw InternalError("combined conjugator failed verification");
    out.line("CONJUGATE", {{"conjugate", "yes"}});
    print_word(out, "CONJUGATOR", h);
    return kExitOk;
}

int run_symcheck(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    NormalForm nf = input_nf(opt.input, ctx);
    CRStatus st = cyclically_reduce(nf);
    if (!std::holds_alternative<CRReduced>(st))
        throw NotCyclicallyReduced("element is not CR; symmetry detection needs a CRNF");
    const auto& red = std::get<CRReduced>(st);
    bool odd_form = symmetry_nf_check(red.crnf);
    auto w = involutory_symmetry_of_crnf(red.crnf);
    out.line(std::string("NF-ODD-FORM ") + (odd_form ? "yes" : "no"),
             {{"odd_form", odd_form ? "yes" : "no"}});
    if (!w) {
        out.line("NO-SYMMETRY", {{"symmetry", "none"}});
        return kExitNegative;
    }
    out.line("SYM u=" + w->u.to_string() + " v=" + w->v.to_string(),
             {{"record", "SYM"}, {"u", w->u.to_string()}, {"v", w->v.to_string()}});
    print_word(out, "CONJUGATOR", red.conjugator);
    return kExitOk;
}

int run_revcheck(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    NormalForm nf = input_nf(opt.input, ctx);
    CRStatus st = cyclically_reduce(nf);
    if (!std::holds_alternative<CRReduced>(st))
        throw NotCyclicallyReduced("element is not CR; the gate needs a CRNF");
    const NormalForm& crnf = std::get<CRReduced>(st).crnf;

    std::vector<int> pd = poly_degree(crnf);
    std::vector<int> rev(pd.rbegin(), pd.rend());
    if (!is_cyclic_permutation(pd, rev)) {
        out.line("NOT-REVERSIBLE (poly-degree)",
                 {{"reversible", "no"}, {"reason", "poly-degree"}});
        return kExitNegative;
    }
    Scalar det = crnf.basic().alpha() * crnf.basic().beta();
    if (!det.is_one() && !(-det).is_one()) {
        out.line("NOT-REVERSIBLE (determinant)",
                 {{"reversible", "no"}, {"reason", "determinant"}});
        return kExitNegative;
    }
    out.line("REVERSIBLE-NECESSARY", {{"reversible", "necessary-conditions-pass"}});

    if (!opt.reversor.empty()) {
        PolyMap f = word_to_polymap(nf);
        PolyMap r = input_map(opt.reversor, ctx);
        if (!is_reversor(f, r)) {
            out.line("NOT-A-REVERSOR", {{"reversor", "rejected"}});
            return kExitNegative;
        }
        unsigned long n = reversor_order(f, r, opt.cap);
        out.line("REV order=" + std::to_string(n) + " word=" +
                     serialize(normal_form_of(r), "; "),
                 {{"record", "REV"},
                  {"order", std::to_string(n)},
                  {"word", serialize(normal_form_of(r), ";")}});
        if (ctx.is_rationals()) {
            ReversorWitness wit{decompose(r), n};
            GroupStructureTag tag = classify_reversing_group(f, std::nullopt, {wit});
            out.line(std::string("GROUP tag=") + to_string(tag),
                     {{"record", "GROUP"}, {"tag", to_string(tag)}});
        }
    }
    return kExitOk;
}

int run_buildrev(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    ReversibleBuild built = [&] {
        if (opt.type == "order4") {
            std::vector<CosetRepE> es;
            for (const auto& p : opt.epolys)
                es.emplace_back(parse_unipoly(load_text(p), ctx));
            std::vector<CosetRepA> as;
            for (const auto& b : opt.abetas)
                as.push_back(CosetRepA{parse_scalar(load_text(b), ctx)});
            return build_reversible_order4(es, as, parse_scalar(opt.alpha, ctx),
                                           parse_scalar(opt.gamma, ctx));
        }
        if (opt.type != "invol")
            throw InvalidLetters("--type must be invol or order4");
        InvolutoryForm form;
        if (opt.form == "tt")
            form = InvolutoryForm::TT;
        else if (opt.form == "hat-t")
            form = InvolutoryForm::HatT;
        else if (opt.form == "hat-bar")
            form = InvolutoryForm::HatBar;
        else
            throw InvalidLetters("--form must be tt, hat-t or hat-bar");
        Word half = parse_word(load_text(opt.half), ctx);
        std::optional<ElementaryMap> ehat, ebar;
        if (!opt.ehat.empty()) ehat = elementary_from(opt.ehat, ctx);
        if (!opt.ebar.empty()) ebar = elementary_from(opt.ebar, ctx);
        return build_reversible_involutory(form, half, ehat, ebar);
    }();
    print_nf(out, built.f);
    out.line("REV order=" + std::to_string(built.reversor.order) + " word=" +
                 serialize(built.reversor.r, "; "),
             {{"record", "REV"},
              {"order", std::to_string(built.reversor.order)},
              {"word", serialize(built.reversor.r, ";")}});
    if (opt.type == "order4")
        out.line("SYM u=0 v=0", {{"record", "SYM"}, {"u", "0"}, {"v", "0"}});
    return kExitOk;
}

void check_field_size(const Options& opt, const FieldCtx& ctx) {
    if (!ctx.is_prime_field())
        throw NotFiniteField("orbit enumeration needs --field Fp:<prime>");
    if (ctx.characteristic() > 101 && !opt.allow_large_p)
        throw CapExceeded("p > 101; pass --allow-large-p to scan " +
                          std::to_string(ctx.characteristic() * ctx.characteristic()) +
                          " points");
}

int run_orbits(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    check_field_size(opt, ctx);
    PolyMap f = input_map(opt.input, ctx);
    if (opt.cross_check) {
        PermTable raw = induced_permutation(f, opt.threads);
        PermTable via_nf = induced_permutation(word_to_polymap(normal_form_of(f)),
                                               opt.threads);
        if (raw.images != via_nf.images)
            throw InternalError("raw and normal-form evaluation disagree");
    }
    if (!opt.reversor.empty()) {
        PolyMap r = input_map(opt.reversor, ctx);
        CyclePairingReport rep = reversor_cycle_pairing(f, r, opt.threads);
        print_cycle_stats(out, rep.stats);
        out.line("RINVARIANT " + std::to_string(rep.r_invariant_cycles),
                 {{"record", "RINVARIANT"},
                  {"count", std::to_string(rep.r_invariant_cycles)}});
        for (const auto& rec : rep.cycles)
            out.line("SYMCYCLE len=" + std::to_string(rec.length) + " invariant=" +
                         (rec.r_invariant ? "1" : "0") + " sym=" +
                         std::to_string(rec.symmetric_points),
                     {{"record", "SYMCYCLE"},
                      {"len", std::to_string(rec.length)},
                      {"invariant", rec.r_invariant ? "1" : "0"},
                      {"sym", std::to_string(rec.symmetric_points)}});
        return kExitOk;
    }
    if (!opt.symmetry.empty()) {
        PolyMap s = input_map(opt.symmetry, ctx);
        bool ok = symmetry_orbit_check(f, s, opt.threads);
        print_cycle_stats(out, cycle_statistics(induced_permutation(f, opt.threads)));
        out.line(std::string("SYMMETRY-ORBITS ") + (ok ? "OK" : "FAIL"),
                 {{"record", "SYMMETRY-ORBITS"}, {"ok", ok ? "1" : "0"}});
        return ok ? kExitOk : kExitNegative;
    }
    print_cycle_stats(out, cycle_statistics(induced_permutation(f, opt.threads)));
    return kExitOk;
}

int run_fixpoints(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    check_field_size(opt, ctx);
    auto pts = fixed_points_fp(input_map(opt.input, ctx));
    for (const Vec2& pt : pts)
        out.line("FIXPOINT x=" + pt.x.to_string() + " y=" + pt.y.to_string(),
                 {{"record", "FIXPOINT"},
                  {"x", pt.x.to_string()},
                  {"y", pt.y.to_string()}});
    out.line("COUNT " + std::to_string(pts.size()),
             {{"record", "COUNT"}, {"count", std::to_string(pts.size())}});
    return kExitOk;
}

int run_spectrum(const Options& opt, const Output& out) {
    FieldCtx ctx = parse_field_spec(opt.field);
    PolyMap f = input_map(opt.input, ctx);
    PolyMap r = input_map(opt.reversor, ctx);
    PolyMap atm = parse_map_expr(load_text(opt.at), ctx);
    if (!atm.p().is_constant() || !atm.q().is_constant())
        throw ParseError("--at expects a constant point '(a, b)'", 0);
    Vec2 a{atm.p().constant_term(), atm.q().constant_term()};
    bool ok = fixed_point_spectrum_check(f, r, a);
    out.line(std::string("RECIPROCAL-SPECTRUM ") + (ok ? "OK" : "FAIL"),
             {{"record", "RECIPROCAL-SPECTRUM"}, {"ok", ok ? "1" : "0"}});
    return ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for plane polynomial automorphisms"};
    app.require_subcommand(1);

    Options opt;
    Output out;

    auto add_common = [&](CLI::App* sub, bool with_input = true) {
        sub->add_option("--field", opt.field, "field: Q or Fp:<prime>");
        sub->add_flag("--machine", out.machine, "key=value records instead of text");
        sub->add_option("--threads", opt.threads, "worker threads for enumeration");
        if (with_input)
            sub->add_option("input", opt.input, "map expression or @file with a word")
                ->required();
    };

    std::map<std::string, std::function<int()>> dispatch;

    auto* d = app.add_subcommand("decompose", "normal form of a map expression");
    add_common(d);
    dispatch["decompose"] = [&] { return run_decompose(opt, out); };

    auto* n = app.add_subcommand("normalform", "normalize a word or map");
    add_common(n);
    dispatch["normalform"] = [&] { return run_normalform(opt, out); };

    auto* le = app.add_subcommand("length", "letter count of the normal form");
    add_common(le);
    dispatch["length"] = [&] { return run_length(opt, out); };

    auto* pdv = app.add_subcommand("polydeg", "poly-degree sequence");
    add_common(pdv);
    dispatch["polydeg"] = [&] { return run_polydeg(opt, out); };

    auto* dg = app.add_subcommand("degree", "degree of the element");
    add_common(dg);
    dispatch["degree"] = [&] { return run_degree(opt, out); };

    auto* cr = app.add_subcommand("cyclereduce", "cyclic reduction with conjugator");
    add_common(cr);
    dispatch["cyclereduce"] = [&] { return run_cyclereduce(opt, out); };

    auto* od = app.add_subcommand("order", "order of the element");
    add_common(od);
    od->add_option("--cap", opt.cap, "powering cap for factor elements");
    dispatch["order"] = [&] { return run_order(opt, out); };

    auto* ct = app.add_subcommand("conjtest", "conjugacy test for two elements");
    add_common(ct);
    ct->add_option("input2", opt.input2, "second map or @file")->required();
    dispatch["conjtest"] = [&] { return run_conjtest(opt, out); };

    auto* sc = app.add_subcommand("symcheck", "involutory symmetry detection");
    add_common(sc);
    dispatch["symcheck"] = [&] { return run_symcheck(opt, out); };

    auto* rc = app.add_subcommand("revcheck", "reversibility gate and witness check");
    add_common(rc);
    rc->add_option("--reversor", opt.reversor, "candidate reversor map");
    rc->add_option("--cap", opt.cap, "order cap for the witness");
    dispatch["revcheck"] = [&] { return run_revcheck(opt, out); };

    auto* br = app.add_subcommand("buildrev", "construct reversible normal forms");
    add_common(br, false);
    br->add_option("--type", opt.type, "invol or order4")->required();
    br->add_option("--form", opt.form, "tt, hat-t or hat-bar (invol)");
    br->add_option("--half", opt.half, "half word (letters, @file or inline)");
    br->add_option("--ehat", opt.ehat, "elementary involution for hat forms");
    br->add_option("--ebar", opt.ebar, "elementary involution for the hat-bar form");
    br->add_option("--e", opt.epolys, "elementary letter polynomial (order4, repeat)");
    br->add_option("--a", opt.abetas, "affine letter beta (order4, repeat)");
    br->add_option("--alpha", opt.alpha, "alpha entry of the closing rotation");
    br->add_option("--gamma", opt.gamma, "gamma entry of the closing rotation");
    dispatch["buildrev"] = [&] { return run_buildrev(opt, out); };

    auto* ob = app.add_subcommand("orbits", "cycle statistics over F_p");
    add_common(ob);
    ob->add_flag("--cross-check", opt.cross_check,
                 "also evaluate through the normal form and compare");
    ob->add_flag("--allow-large-p", opt.allow_large_p, "lift the p <= 101 cap");
    ob->add_option("--reversor", opt.reversor, "pair cycles under this reversor");
    ob->add_option("--symmetry", opt.symmetry, "check orbits under this symmetry");
    dispatch["orbits"] = [&] { return run_orbits(opt, out); };

    auto* fp = app.add_subcommand("fixpoints", "fixed points over F_p");
    add_common(fp);
    fp->add_flag("--allow-large-p", opt.allow_large_p, "lift the p <= 101 cap");
    dispatch["fixpoints"] = [&] { return run_fixpoints(opt, out); };

    auto* sp = app.add_subcommand("spectrum", "reciprocal spectrum at a fixed point");
    add_common(sp);
    sp->add_option("--reversor", opt.reversor, "verified reversor")->required();
    sp->add_option("--at", opt.at, "fixed point '(a, b)'")->required();
    dispatch["spectrum"] = [&] { return run_spectrum(opt, out); };

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto* sub : app.get_subcommands())
            return dispatch.at(sub->get_name())();
        return kExitError;
    } catch (const ga2::Error& e) {
        std::string what = e.what();
        std::string msg = what.substr(what.find(':') == std::string::npos
                                          ? 0
                                          : what.find(':') + 2);
        std::cout << "ERROR " << e.kind() << ": " << msg << std::endl;
        return kExitError;
    } catch (const std::exception& e) {
        std::cout << "ERROR InternalError: " << e.what() << std::endl;
        return kExitError;
    }
}
