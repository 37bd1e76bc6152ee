#include "ambiclass/cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ambiclass/bernoulli.hpp"
#include "ambiclass/filtration.hpp"
#include "ambiclass/module_structure.hpp"

namespace ambiclass {

namespace {

using json = nlohmann::ordered_json;

json num(const Int& v)
{
    if (v.fits_slong_p()) {
        long x = mpz_get_si(v.get_mpz_t());
        if (x > -(1L << 53) && x < (1L << 53)) return x;
    }
    return v.get_str();
}

json num(const Rat& v)
{
    if (v.get_den() == 1) return num(Int(v.get_num()));
    return v.get_str();
}

json num_list(const std::vector<Int>& vs)
{
    json a = json::array();
    for (const auto& v : vs) a.push_back(num(v));
    return a;
}

std::string element_str(const QuadElement& e)
{
    std::ostringstream os;
    os << "(" << e.x.get_str() << (e.y >= 0 ? "+" : "-") << Int(abs(e.y)).get_str() << "*sqrt("
       << e.m.get_str() << "))/" << e.z.get_str();
    return os.str();
}

json element_json(const QuadElement& e)
{
    return json{{"x", num(e.x)}, {"y", num(e.y)}, {"z", num(e.z)}, {"m", num(e.m)},
                {"text", element_str(e)}};
}

struct OutputOptions {
    std::string format{"text"};
    std::string out_file;
};

void emit(const OutputOptions& opt, std::ostream& os, const json& doc, const std::string& text)
{
    if (opt.format == "json") {
        os << doc.dump() << "\n";
    } else {
        os << text;
    }
    if (!opt.out_file.empty()) {
        std::ofstream f(opt.out_file, std::ios::app);
        f << doc.dump() << "\n";
    }
}

struct FieldArgs {
    long d{0};
    long m{0};
    QuadraticField resolve() const
    {
        if (d != 0 && m != 0) throw precondition_error("give either -d or -m, not both");
        if (d != 0) {
            // a fundamental discriminant is taken as D, anything squarefree as
            // the radicand; the overlap (squarefree = 1 mod 4) is the same field
            if (is_fundamental_discriminant(Int(d))) return field_from_discriminant(Int(d));
            return make_field(Int(d));
        }
        if (m != 0) return make_field(Int(m));
        throw precondition_error("a discriminant (-d) or radicand (-m) is required");
    }
};

void add_field_options(CLI::App* cmd, FieldArgs& fa)
{
    cmd->add_option("-d,--disc", fa.d, "fundamental discriminant D (or a squarefree radicand)");
    cmd->add_option("-m,--radicand", fa.m, "squarefree m of Q(sqrt(m))");
}


json structure_json(const ClassGroupStructure& s)
{
    return json{{"order", num(s.order)}, {"elementary_divisors", num_list(s.elementary_divisors)}};
}

long parse_threads(long cli_value)
{
    if (cli_value > 0) return cli_value;
    if (const char* env = std::getenv("AMBICLASS_THREADS")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 1;
}

// ---- sweep checks ---------------------------------------------------------

struct SweepRow {
    long d;
    bool pass;
    std::string detail;
};

SweepRow sweep_check_one(const std::string& check, long d)
{
    SweepRow row{d, false, ""};
    Int D(d);
    if (check == "filtration-oracle") {
        QuadraticField k = field_from_discriminant(D);
        FiltrationReport rep = compute_filtration(k);
        auto sylow = FormClassGroup::get(D)->structure(Sense::narrow).sylow(2);
        row.pass = sylow == rep.structure.elementary_divisors;
        std::ostringstream os;
        os << "filtration=" << json(num_list(rep.structure.elementary_divisors)).dump()
           << " oracle=" << json(num_list(sylow)).dump();
        row.detail = os.str();
    } else if (check == "chevalley-rank") {
        QuadraticField k = field_from_discriminant(D);
        long t = static_cast<long>(k.ramified.size());
        auto divs = FormClassGroup::get(D)->structure(Sense::narrow).elementary_divisors;
        long rank2 = 0;
        for (const auto& dv : divs)
            if (dv % 2 == 0) ++rank2;
        row.pass = rank2 == t - 1;
        row.detail = "t=" + std::to_string(t) + " rank2=" + std::to_string(rank2);
    } else if (check == "analytic-h") {
        if (d > 0) {
            row.pass = true;
            row.detail = "real field, skipped";
            return row;
        }
        Rat b = b1(DirichletCharacter::quadratic(D)).rational();
        Int h = FormClassGroup::get(D)->class_number(Sense::narrow);
        long w = d == -3 ? 6 : d == -4 ? 4 : 2;
        Rat half_w(w, 2);
        half_w.canonicalize();
        Rat hb = half_w * abs(b);
        row.pass = hb == Rat(h);
        row.detail = "h=" + h.get_str() + " (w/2)|B1|=" + hb.get_str();
    } else if (check == "unit-norm-senses") {
        if (d < 0) {
            row.pass = true;
            row.detail = "imaginary";
            return row;
        }
        QuadraticField k = field_from_discriminant(D);
        auto g = FormClassGroup::get(D);
        bool same = g->class_number(Sense::narrow) == g->class_number(Sense::ordinary);
        row.pass = (k.unit_norm == -1) == same;
        row.detail = std::string("unit_norm=") + std::to_string(k.unit_norm) +
                     " h+=" + g->class_number(Sense::narrow).get_str() +
                     " h=" + g->class_number(Sense::ordinary).get_str();
    } else {
        throw precondition_error("unknown sweep check: " + check);
    }
    return row;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"exact genus theory, Hasse symbols and 2-class-group filtrations for quadratic fields"};
    app.require_subcommand(1);

    OutputOptions opt;
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", opt.out_file, "append the json report to this file");

    // ---- class-group
    auto* sc_class = app.add_subcommand("class-group", "narrow or ordinary class group by the form oracle");
    FieldArgs fa_class;
    add_field_options(sc_class, fa_class);
    std::string sense_class = "narrow";
    sc_class->add_option("--sense", sense_class)->check(CLI::IsMember({"narrow", "ordinary"}));

    // ---- ambiguous
    auto* sc_amb = app.add_subcommand("ambiguous", "ambiguous class number by Chevalley's formula");
    FieldArgs fa_amb;
    add_field_options(sc_amb, fa_amb);
    std::string sense_amb = "narrow";
    sc_amb->add_option("--sense", sense_amb)->check(CLI::IsMember({"narrow", "ordinary"}));

    // ---- genclass
    auto* sc_gen = app.add_subcommand("genclass", "do the given split primes generate the 2-class group");
    FieldArgs fa_gen;
    add_field_options(sc_gen, fa_gen);
    std::vector<long> gen_primes;
    sc_gen->add_option("--primes", gen_primes, "split primes")->delimiter(',');

    // ---- hasse-symbol
    auto* sc_sym = app.add_subcommand("hasse-symbol", "Hasse norm-residue symbol at one place");
    FieldArgs fa_sym;
    add_field_options(sc_sym, fa_sym);
    std::string sym_x, sym_place;
    long sym_multiple = 1;
    sc_sym->add_option("-x", sym_x, "rational argument")->required();
    sc_sym->add_option("--place", sym_place, "prime or 'inf'")->required();
    sc_sym->add_option("--modulus-multiple", sym_multiple, "work with a multiple of the conductor");

    // ---- is-norm
    auto* sc_isn = app.add_subcommand("is-norm", "global norm test by the Hasse norm theorem");
    FieldArgs fa_isn;
    add_field_options(sc_isn, fa_isn);
    std::string isn_x;
    sc_isn->add_option("-x", isn_x, "rational argument")->required();

    // ---- solve-norm
    auto* sc_sol = app.add_subcommand("solve-norm", "solve N(y) = x exactly");
    FieldArgs fa_sol;
    add_field_options(sc_sol, fa_sol);
    std::string sol_x;
    bool sol_integral = false;
    sc_sol->add_option("-x", sol_x, "rational target")->required();
    sc_sol->add_flag("--integral", sol_integral, "also search for an integral solution");

    // ---- filtration
    auto* sc_fil = app.add_subcommand("filtration", "2-class-group filtration by norm symbols");
    FieldArgs fa_fil;
    add_field_options(sc_fil, fa_fil);

    // ---- redei
    auto* sc_red = app.add_subcommand("redei", "Redei matrix and 4-rank");
    FieldArgs fa_red;
    add_field_options(sc_red, fa_red);

    // ---- structure
    auto* sc_str = app.add_subcommand("structure", "group structures from divisor data");
    long str_p = 0;
    std::vector<long> str_divisors;
    long str_n = -1;
    sc_str->add_option("--p", str_p, "prime p")->required();
    sc_str->add_option("--divisors", str_divisors, "(1-zeta)-exponents n_j")->delimiter(',');
    sc_str->add_option("--nontrivial-norm", str_n, "filtration length n for the nontrivial-norm case");

    // ---- simulate
    auto* sc_sim = app.add_subcommand("simulate", "explicit module simulator");
    long sim_p = 0;
    std::vector<long> sim_divisors;
    sc_sim->add_option("--p", sim_p, "prime p")->required();
    sc_sim->add_option("--divisors", sim_divisors, "(1-zeta)-exponents n_j")->delimiter(',')->required();

    // ---- bernoulli
    auto* sc_ber = app.add_subcommand("bernoulli", "generalized Bernoulli number B1 of chi_D");
    FieldArgs fa_ber;
    add_field_options(sc_ber, fa_ber);
    long ber_p = 0;
    sc_ber->add_option("--p", ber_p, "also report the p-adic valuation");

    // ---- stickelberger
    auto* sc_sti = app.add_subcommand("stickelberger", "Stickelberger element of the quadratic field");
    FieldArgs fa_sti;
    add_field_options(sc_sti, fa_sti);

    // ---- mwk-check
    auto* sc_mwk = app.add_subcommand("mwk-check", "analytic vs oracle p-class order");
    FieldArgs fa_mwk;
    add_field_options(sc_mwk, fa_mwk);
    long mwk_p = 0;
    sc_mwk->add_option("--p", mwk_p, "odd prime")->required();

    // ---- admissible
    auto* sc_adm = app.add_subcommand("admissible", "admissible prime sets for p = 3");
    FieldArgs fa_adm;
    add_field_options(sc_adm, fa_adm);
    long adm_t = 1, adm_bound = 1000, adm_p = 3;
    bool adm_verify = false;
    sc_adm->add_option("--t", adm_t, "tuple size");
    sc_adm->add_option("--bound", adm_bound, "prime ceiling");
    sc_adm->add_option("--p", adm_p, "prime (3)");
    sc_adm->add_flag("--verify", adm_verify, "oracle-verify generation for each set");

    // ---- sweep
    auto* sc_swp = app.add_subcommand("sweep", "run a predicate over a discriminant range");
    long swp_min = 0, swp_max = 0, swp_threads = 0;
    std::string swp_check;
    sc_swp->add_option("--min", swp_min, "lower bound of D")->required();
    sc_swp->add_option("--max", swp_max, "upper bound of D")->required();
    sc_swp->add_option("--check", swp_check, "predicate name")
        ->required()
        ->check(CLI::IsMember({"filtration-oracle", "chevalley-rank", "analytic-h", "unit-norm-senses"}));
    sc_swp->add_option("--threads", swp_threads, "worker count (or AMBICLASS_THREADS)");

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n" << app.help();
        return 64;
    }

    auto parse_rat = [](const std::string& s) {
        Rat r;
        if (r.set_str(s, 10) != 0) throw precondition_error("bad rational: " + s);
        r.canonicalize();
        return r;
    };

    try {
        if (sc_class->parsed()) {
            QuadraticField k = fa_class.resolve();
            Sense sense = sense_class == "narrow" ? Sense::narrow : Sense::ordinary;
            auto s = FormClassGroup::get(k.D)->structure(sense);
            json doc{{"input", {{"D", num(k.D)}, {"sense", sense_class}}},
                     {"result", structure_json(s)},
                     {"certificates", json::object()}};
            std::ostringstream os;
            os << "Cl" << (sense == Sense::narrow ? "+" : "") << "(" << k.D << ") order " << s.order
               << ", divisors " << json(num_list(s.elementary_divisors)).dump() << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_amb->parsed()) {
            QuadraticField k = fa_amb.resolve();
            Sense sense = sense_amb == "narrow" ? Sense::narrow : Sense::ordinary;
            AmbiguousReport r = ambiguous_number(k, sense);
            json doc{{"input", {{"D", num(k.D)}, {"sense", sense_amb}}},
                     {"result", {{"order", num(r.order)}}},
                     {"certificates", {{"t", r.t}, {"delta0", r.delta0}}}};
            std::ostringstream os;
            os << "ambiguous classes (" << sense_amb << "): " << r.order << "  [t=" << r.t
               << ", delta0=" << r.delta0 << "]\n";
            emit(opt, out, doc, os.str());
        } else if (sc_gen->parsed()) {
            QuadraticField k = fa_gen.resolve();
            std::vector<Int> primes(gen_primes.begin(), gen_primes.end());
            bool g = genclass_check(k, primes);
            std::vector<Rat> xs(primes.begin(), primes.end());
            SymbolMatrix m = symbol_matrix(k, xs);
            json rows = json::array();
            for (const auto& r : m.rows) rows.push_back(r);
            json doc{{"input", {{"D", num(k.D)}, {"primes", json(gen_primes)}}},
                     {"result", {{"generates", g}}},
                     {"certificates",
                      {{"rank", m.rank}, {"omega_dim", omega_group(k).dimension}, {"rows", rows}}}};
            std::ostringstream os;
            os << "generates: " << (g ? "true" : "false") << "  [rank " << m.rank << " of "
               << omega_group(k).dimension << "]\n";
            emit(opt, out, doc, os.str());
        } else if (sc_sym->parsed()) {
            QuadraticField k = fa_sym.resolve();
            Rat x = parse_rat(sym_x);
            Place place = sym_place == "inf" ? Place::infinity() : Place::at(Int(sym_place));
            int s = hasse_symbol(k, x, place, Int(sym_multiple));
            json cert = json::object();
            if (!place.infinite && (abs(k.D) * Int(sym_multiple)) % place.p == 0)
                cert["associate"] = num(associate_number(k, x, place.p, Int(sym_multiple)));
            json doc{{"input",
                      {{"D", num(k.D)}, {"x", num(x)}, {"place", sym_place},
                       {"modulus_multiple", sym_multiple}}},
                     {"result", {{"symbol", s}}},
                     {"certificates", cert}};
            std::ostringstream os;
            os << "(" << x << ", K/Q)_" << sym_place << " = " << (s > 0 ? "+1" : "-1");
            if (cert.contains("associate")) os << "   [associate " << cert["associate"].dump() << "]";
            os << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_isn->parsed()) {
            QuadraticField k = fa_isn.resolve();
            Rat x = parse_rat(isn_x);
            bool g = is_global_norm(k, x);
            json syms = json::object();
            for (const Int& q : k.ramified)
                syms[q.get_str()] = hasse_symbol(k, x, Place::at(q));
            syms["inf"] = hasse_symbol(k, x, Place::infinity());
            json doc{{"input", {{"D", num(k.D)}, {"x", num(x)}}},
                     {"result", {{"is_norm", g}}},
                     {"certificates", {{"symbols", syms}}}};
            std::ostringstream os;
            os << x << (g ? " is a norm from " : " is not a norm from ") << "Q(sqrt(" << k.m
               << "))\n";
            emit(opt, out, doc, os.str());
        } else if (sc_sol->parsed()) {
            QuadraticField k = fa_sol.resolve();
            Rat x = parse_rat(sol_x);
            auto y = solve_norm_equation(k, x);
            json res;
            std::ostringstream os;
            if (y) {
                res = json{{"found", true}, {"y", element_json(*y)}};
                os << "N(" << element_str(*y) << ") = " << x << "\n";
            } else {
                res = json{{"found", false}};
                os << x << " is not a norm\n";
            }
            json cert = json::object();
            if (y) cert["norm"] = num(y->norm());
            if (sol_integral && x.get_den() == 1) {
                auto yi = solve_norm_integral(k, Int(x.get_num()), false);
                cert["integral_solution_exists"] = yi.has_value();
                if (yi) cert["integral_solution"] = element_json(*yi);
            }
            json doc{{"input", {{"D", num(k.D)}, {"x", num(x)}}}, {"result", res},
                     {"certificates", cert}};
            emit(opt, out, doc, os.str());
        } else if (sc_fil->parsed()) {
            QuadraticField k = fa_fil.resolve();
            FiltrationReport rep = compute_filtration(k);
            json doc{{"input", {{"D", num(k.D)}}},
                     {"result",
                      {{"orders", num_list(rep.order_sequence)},
                       {"length", rep.length},
                       {"structure", num_list(rep.structure.elementary_divisors)}}},
                     {"certificates",
                      {{"deltas", json(rep.delta_sequence)},
                       {"divisors_nj", json(rep.divisors_nj)},
                       {"redei_rank", rep.redei_rank},
                       {"four_rank", rep.four_rank}}}};
            std::ostringstream os;
            os << "orders " << json(num_list(rep.order_sequence)).dump() << ", n = " << rep.length
               << ", structure " << json(num_list(rep.structure.elementary_divisors)).dump() << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_red->parsed()) {
            QuadraticField k = fa_red.resolve();
            RedeiMatrix m = redei_matrix(k);
            json rows = json::array();
            for (const auto& r : m.rows) rows.push_back(r);
            json doc{{"input", {{"D", num(k.D)}}},
                     {"result", {{"rank", m.rank}, {"four_rank", m.four_rank}}},
                     {"certificates", {{"primes", num_list(m.primes)}, {"rows", rows}}}};
            std::ostringstream os;
            os << "Redei rank " << m.rank << ", 4-rank " << m.four_rank << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_str->parsed()) {
            json groups = json::array();
            std::ostringstream os;
            if (str_n >= 0) {
                auto cands = structure_nontrivial_norm(Int(str_p), str_n);
                for (const auto& s : cands) groups.push_back(num_list(s.elementary_divisors));
            } else {
                DivisorProfile prof{Int(str_p), str_divisors};
                groups.push_back(num_list(structure_from_divisors(prof).elementary_divisors));
            }
            json doc{{"input", {{"p", str_p}, {"divisors", json(str_divisors)}, {"n", str_n}}},
                     {"result", {{"groups", groups}}},
                     {"certificates", json::object()}};
            os << "groups: " << groups.dump() << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_sim->parsed()) {
            DivisorProfile prof{Int(sim_p), sim_divisors};
            SimModule M = simulate_module(prof);
            auto orders = brute_filtration(M);
            auto st = module_structure(M);
            auto predicted = filtration_orders_from_divisors(prof);
            json doc{{"input", {{"p", sim_p}, {"divisors", json(sim_divisors)}}},
                     {"result",
                      {{"order", num(M.order)},
                       {"brute_orders", num_list(orders)},
                       {"structure", num_list(st.elementary_divisors)}}},
                     {"certificates",
                      {{"predicted_orders", num_list(predicted)},
                       {"pk_ranks", json(pk_ranks(prof))},
                       {"nu_trivial", nu_trivial(M)}}}};
            std::ostringstream os;
            os << "order " << M.order << ", filtration " << json(num_list(orders)).dump()
               << ", structure " << json(num_list(st.elementary_divisors)).dump() << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_ber->parsed()) {
            QuadraticField k = fa_ber.resolve();
            Rat b = b1(DirichletCharacter::quadratic(k.D)).rational();
            json res{{"b1", num(b)}};
            std::ostringstream os;
            os << "B1(chi_" << k.D << ") = " << b;
            if (ber_p > 1) {
                long v = valuation(b, Int(ber_p));
                res["valuation"] = v;
                os << ", v_" << ber_p << " = " << v;
            }
            os << "\n";
            json doc{{"input", {{"D", num(k.D)}, {"p", ber_p}}}, {"result", res},
                     {"certificates", json::object()}};
            emit(opt, out, doc, os.str());
        } else if (sc_sti->parsed()) {
            QuadraticField k = fa_sti.resolve();
            auto st = stickelberger(abs(k.D), DirichletCharacter::quadratic(k.D));
            json coeffs = json::array();
            for (const auto& [j, c] : st)
                coeffs.push_back(json{{"exponent", j}, {"coefficient", num(c)}});
            json doc{{"input", {{"D", num(k.D)}, {"m", num(Int(abs(k.D)))}}},
                     {"result", {{"coefficients", coeffs}}},
                     {"certificates", json::object()}};
            std::ostringstream os;
            os << "St coefficients " << coeffs.dump() << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_mwk->parsed()) {
            QuadraticField k = fa_mwk.resolve();
            MwkReport r = mwk_order_check(k.D, Int(mwk_p));
            json doc{{"input", {{"D", num(k.D)}, {"p", mwk_p}}},
                     {"result",
                      {{"v_analytic", r.v_analytic},
                       {"v_oracle", r.v_oracle},
                       {"pass", r.pass},
                       {"omega_excluded", r.omega_excluded}}},
                     {"certificates", json::object()}};
            std::ostringstream os;
            if (r.omega_excluded)
                os << "omega-excluded\n";
            else
                os << "v_analytic = " << r.v_analytic << ", v_oracle = " << r.v_oracle << ": "
                   << (r.pass ? "pass" : "FAIL") << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_adm->parsed()) {
            QuadraticField k = fa_adm.resolve();
            auto res = admissible_search(k.D, Int(adm_p), adm_t, Int(adm_bound));
            auto set_json = [&](const AdmissibleSet& s) {
                json j{{"primes", num_list(s.primes)}, {"exponents", json(s.exponents)},
                       {"valuation", s.valuation}};
                if (adm_verify) j["generates"] = verify_generation(k.D, s.primes, Int(adm_p));
                return j;
            };
            json sets = json::array(), higher = json::array();
            for (const auto& s : res.admissible) sets.push_back(set_json(s));
            for (const auto& s : res.higher_valuation) higher.push_back(set_json(s));
            json doc{{"input", {{"D", num(k.D)}, {"p", adm_p}, {"t", adm_t}, {"bound", adm_bound}}},
                     {"result", {{"admissible", sets}}},
                     {"certificates", {{"higher_valuation", higher}}}};
            std::ostringstream os;
            os << res.admissible.size() << " admissible set(s), " << res.higher_valuation.size()
               << " with higher valuation\n";
            for (const auto& s : res.admissible)
                os << "  " << json(num_list(s.primes)).dump() << " valuation " << s.valuation << "\n";
            emit(opt, out, doc, os.str());
        } else if (sc_swp->parsed()) {
            long threads = parse_threads(swp_threads);
            std::vector<long> ds;
            for (long d = swp_min; d <= swp_max; ++d)
                if (d != 0 && d != 1 && is_fundamental_discriminant(Int(d))) ds.push_back(d);
            std::vector<SweepRow> rows(ds.size());
            std::atomic<size_t> next{0};
            auto worker = [&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= ds.size()) break;
                    rows[i] = sweep_check_one(swp_check, ds[i]);
                }
            };
            if (threads <= 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                for (long i = 0; i < threads; ++i) pool.emplace_back(worker);
                for (auto& th : pool) th.join();
            }
            long failures = 0;
            json jrows = json::array();
            std::ostringstream os;
            for (const auto& r : rows) {
                if (!r.pass) ++failures;
                jrows.push_back(json{{"D", r.d}, {"pass", r.pass}, {"detail", r.detail}});
                os << "D=" << r.d << " " << (r.pass ? "pass" : "FAIL") << " " << r.detail << "\n";
            }
            os << "checked " << rows.size() << " discriminants, " << failures << " failure(s)\n";
            json doc{{"input",
                      {{"min", swp_min}, {"max", swp_max}, {"check", swp_check},
                       {"threads", threads}}},
                     {"result", {{"count", rows.size()}, {"failures", failures}}},
                     {"certificates", {{"rows", jrows}}}};
            emit(opt, out, doc, os.str());
            return failures == 0 ? 0 : 1;
        }
    } catch (const precondition_error& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace ambiclass
