// paramodular: Hecke eigenvalues of paramodular forms of prime level via
// algebraic modular forms on the quaternionic unitary group.
//
// Verbs: gamma, dims, hecke-reps, trace, eigenvalue, verify, verify-table.
// Exit codes: 0 success, 1 verification failure, 2 usage or data error.

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "gu2/congruence.hpp"
#include "gu2/trace.hpp"

using namespace gu2;

namespace {

struct GlobalOpts {
    std::string data_dir;
    std::string table_path;  // override of the bundled algebra table
    std::string format = "aligned";
    std::string cache_dir;
    int threads = 1;

    std::string data_file(const std::string& name) const {
        return data_dir + "/" + name;
    }
};

std::string default_data_dir() {
    if (const char* env = std::getenv("GU2_DATA_DIR")) return env;
#ifdef GU2_BUNDLED_DATA_DIR
    return GU2_BUNDLED_DATA_DIR;
#else
    return "data";
#endif
}

TraceEngine make_engine(const GlobalOpts& opt, int p) {
    return TraceEngine(p, opt.table_path, opt.threads, opt.cache_dir);
}

EigenformDatabase load_db(const GlobalOpts& opt) {
    return EigenformDatabase::load(opt.data_file("eigenforms.dat"));
}

bool csv(const GlobalOpts& opt) { return opt.format == "csv"; }

// ---- verb implementations --------------------------------------------------

int run_gamma(const GlobalOpts& opt, int p, Int dump_norms) {
    TraceEngine eng = make_engine(opt, p);
    if (dump_norms >= 0) {
        dump_norm_list(std::cout, eng.norm_cache().get(dump_norms));
        return 0;
    }
    MassReport rep = eng.mass_report();
    if (csv(opt)) {
        std::cout << "p,gamma1,gamma2,mass_ok\n"
                  << p << ","
                  << (rep.gamma1_applicable ? std::to_string(rep.gamma1_size)
                                            : std::string("-"))
                  << "," << rep.gamma2_size << "," << (rep.ok() ? 1 : 0)
                  << "\n";
    } else {
        std::cout << "p = " << p << "\n";
        if (rep.gamma1_applicable)
            std::cout << "|Gamma^(1)| = " << rep.gamma1_size
                      << " (mass formula expects " << rep.gamma1_expected
                      << ")\n";
        else
            std::cout << "|Gamma^(1)| = " << eng.gamma1().size()
                      << " (principal-genus class number > 1 at this level)\n";
        std::cout << "|Gamma^(2)| = " << rep.gamma2_size
                  << " (mass formula expects " << rep.gamma2_expected << ")\n";
        std::cout << "mass check: " << (rep.ok() ? "pass" : "FAIL") << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int run_dims(const GlobalOpts& opt, int p, int jmax, int kmax) {
    TraceEngine eng = make_engine(opt, p);
    if (!csv(opt))
        std::cout << "new-space dimensions, p = " << p << "\n";
    if (csv(opt)) {
        std::cout << "j";
        for (int kt = 0; kt <= kmax; ++kt) std::cout << "," << kt;
        std::cout << "\n";
    } else {
        std::cout << std::setw(4) << "j\\k";
        for (int kt = 0; kt <= kmax; ++kt) std::cout << std::setw(6) << kt;
        std::cout << "\n";
    }
    for (int j = 0; j <= jmax; j += 2) {
        if (csv(opt))
            std::cout << j;
        else
            std::cout << std::setw(4) << j;
        for (int kt = 0; kt <= kmax; ++kt) {
            int k = kt + 3;
            std::string cell;
            if (j == 0) {
                cell = eng.dim_full(j, k).get_str() + "*";
            } else {
                BigInt full = eng.dim_full(j, k);
                Int m = dim_cusp_sl2(j + 2 * k - 2);
                Int n = eng.newform_count(j);
                BigInt nd = full - BigInt(static_cast<long>(m)) *
                                       static_cast<long>(n);
                GU2_CHECK(nd >= 0, "old dimension exceeds full dimension");
                cell = nd.get_str();
            }
            if (csv(opt))
                std::cout << "," << cell;
            else
                std::cout << std::setw(6) << cell;
        }
        std::cout << "\n";
    }
    std::cout << (csv(opt) ? "# " : "")
              << "* j = 0 row: full space dimensions (the old-space rule is "
                 "undefined there)\n";
    return 0;
}

int run_hecke_reps(const GlobalOpts& opt, int p, Int q, bool print_reps) {
    TraceEngine eng = make_engine(opt, p);
    const HeckeRepSet& rs = eng.reps(q);
    std::cout << "p = " << p << ", q = " << q << ": " << rs.reps.size()
              << " left-coset representatives (degree (q+1)(q^2+1) = "
              << (q + 1) * (q * q + 1) << ")\n";
    if (print_reps)
        for (const Gu2Matrix& r : rs.reps) std::cout << r.m << "\n";
    return 0;
}

int run_trace(const GlobalOpts& opt, int p, Int q, int j, int k, int power) {
    TraceEngine eng = make_engine(opt, p);
    Rational tr = eng.trace_q_power(q, power, j, k);
    if (csv(opt)) {
        std::cout << "p,q,j,k,power,trace\n"
                  << p << "," << q << "," << j << "," << k << "," << power
                  << "," << tr << "\n";
    } else {
        std::cout << "tr(T_{u," << q << "}";
        if (power > 1) std::cout << "^" << power;
        std::cout << ") on A_{" << j << "," << k - 3 << "}(D), p = " << p
                  << ": " << tr << "\n";
    }
    return 0;
}

int run_eigenvalue(const GlobalOpts& opt, int p, Int q, int j, int k) {
    TraceEngine eng = make_engine(opt, p);
    EigenformDatabase db = load_db(opt);
    TraceResult res = new_eigenvalue(eng, db, q, j, k);
    if (csv(opt)) {
        std::cout << "p,q,j,k,dim_full,dim_old,dim_new,trace,old,b_q\n"
                  << p << "," << q << "," << j << "," << k << ","
                  << res.full_dim << "," << res.old_dim << "," << res.new_dim
                  << "," << res.total << "," << res.old_part << ","
                  << res.new_part << "\n";
    } else {
        std::cout << "p = " << p << ", q = " << q << ", (j,k) = (" << j << ","
                  << k << ")\n"
                  << "dim full = " << res.full_dim << ", old = " << res.old_dim
                  << " (m*n = " << res.m << "*" << res.n
                  << "), new = " << res.new_dim << "\n"
                  << "tr(T_{u," << q << "}) = " << res.total
                  << ", old part = " << res.old_part << "\n"
                  << "b_" << q << " = " << res.new_part << "\n";
        if (res.j0_empty_old_assumed)
            std::cout << "note: j = 0, empty old space assumed (weight-2 "
                         "newspace vanishes)\n";
    }
    return 0;
}

void print_report_line(const CongruenceReport& rep, bool as_csv) {
    if (as_csv) {
        std::cout << rep.p << "," << rep.j << "," << rep.k << "," << rep.q
                  << "," << rep.ell << "," << rep.trace_total << "," << rep.b_q
                  << "," << rep.residual << ","
                  << (rep.error.empty() ? verdict_name(rep.verdict) : "error")
                  << "\n";
        return;
    }
    std::cout << "p=" << std::setw(2) << rep.p << " (j,k)=(" << std::setw(2)
              << rep.j << "," << std::setw(2) << rep.k << ") q=" << rep.q
              << " ell=" << std::setw(4) << rep.ell;
    if (!rep.error.empty()) {
        std::cout << "  ERROR: " << rep.error << "\n";
        return;
    }
    std::cout << "  tr=" << std::setw(9) << rep.trace_total
              << "  b=" << std::setw(9) << rep.b_q << "  " << std::setw(7)
              << verdict_name(rep.verdict);
    if (!rep.warning.empty()) std::cout << "  [" << rep.warding_placeholder
              << "]";
    std::cout << "\n";
}

int run_verify(const GlobalOpts& opt, int p, Int q, int j, int k, Int ell,
               const std::string& record_file, const std::string& label) {
    TraceEngine eng = make_engine(opt, p);
    EigenformDatabase db = record_file.empty()
                               ? load_db(opt)
                               : EigenformDatabase::load(record_file);
    Int w = j + 2 * k - 2;
    std::vector<const EigenformRecord*> cands;
    for (const EigenformRecord* r : db.find(p, w))
        if (label.empty() || r->label == label) cands.push_back(r);
    if (cands.empty())
        throw data_error("no eigenform record of level " + std::to_string(p) +
                         " and weight " + std::to_string(w));
    if (cands.size() > 1)
        throw data_error("several records match; disambiguate with --label");
    const EigenformRecord& rec = *cands[0];
    BigInt ell_big = ell > 0 ? bigint_of(ell) : rec.ell;
    GU2_INPUT_CHECK(ell_big > 0, data_error,
                    "no congruence prime: pass --ell or add it to the record");

    TraceResult res = new_eigenvalue(eng, db, q, j, k);
    CongruenceReport rep =
        check_congruence(rec, res.new_part, p, q, j, k, ell_big);
    rep.trace_total = res.total;
    rep.full_dim = res.full_dim;
    rep.old_dim = res.old_dim;
    rep.new_dim = res.new_dim;
    if (csv(opt))
        std::cout << "p,j,k,q,ell,trace,b_q,residual,verdict\n";
    print_report_line(rep, csv(opt));
    return rep.verdict == Verdict::fails ? 1 : 0;
}

int run_verify_table(const GlobalOpts& opt) {
    EigenformDatabase db = load_db(opt);
    auto rows = load_congruence_rows(opt.data_file("congruences.dat"));
    auto reports = verify_table(rows, db, opt.table_path, opt.threads);
    if (csv(opt)) std::cout << "p,j,k,q,ell,trace,b_q,residual,verdict\n";
    bool bad = false;
    for (const auto& rep : reports) {
        print_report_line(rep, csv(opt));
        bad = bad || rep.failed();
    }
    if (!csv(opt)) {
        std::size_t holds = 0, vac = 0;
        for (const auto& rep : reports) {
            holds += rep.verdict == Verdict::holds && rep.error.empty();
            vac += rep.verdict == Verdict::vacuous && rep.error.empty();
        }
        std::cout << reports.size() << " rows: " << holds << " hold, " << vac
                  << " vacuous, " << (reports.size() - holds - vac)
                  << " failed\n";
    }
    return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Hecke eigenvalues of prime-level paramodular forms via algebraic "
        "modular forms on GU_2(D)"};
    app.require_subcommand(1);

    GlobalOpts opt;
    opt.data_dir = default_data_dir();
    if (const char* env = std::getenv("GU2_CACHE_DIR")) opt.cache_dir = env;
    app.add_option("--data", opt.data_dir, "data directory")
        ->envname("GU2_DATA_DIR");
    app.add_option("--table", opt.table_path,
                   "algebra table file (defaults to the bundled one)");
    app.add_option("--format", opt.format, "output format: aligned | csv")
        ->check(CLI::IsMember({"aligned", "csv"}));
    app.add_option("--threads", opt.threads, "worker thread count")
        ->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", opt.cache_dir,
                   "directory for memoized group data (safe to delete)");

    int p = 3, j = 2, k = 8, power = 1;
    Int q = 2, ell = 0, dump_norms = -1;
    int jmax = 20, kmax = 15;
    bool print_reps = false;
    std::string record_file, label;

    auto* c_gamma = app.add_subcommand(
        "gamma", "group orders |Gamma^(1)|, |Gamma^(2)| and the mass check");
    c_gamma->add_option("--p", p, "ramified prime")->required();
    c_gamma->add_option("--dump-norms", dump_norms,
                        "print the norm-n lattice list and exit");

    auto* c_dims = app.add_subcommand(
        "dims", "new-space dimension table over the (j,k) grid");
    c_dims->add_option("--p", p, "ramified prime")->required();
    c_dims->add_option("--j-max", jmax, "largest j (even), default 20");
    c_dims->add_option("--k-max", kmax, "largest table column k, default 15");

    auto* c_reps = app.add_subcommand(
        "hecke-reps", "left-coset representatives for T_{u,q}");
    c_reps->add_option("--p", p, "ramified prime")->required();
    c_reps->add_option("--q", q, "Hecke prime")->required();
    c_reps->add_flag("--print", print_reps, "print the matrices");

    auto* c_trace =
        app.add_subcommand("trace", "tr(T_{u,q}^d) on A_{j,k-3}(D)");
    c_trace->add_option("--p", p, "ramified prime")->required();
    c_trace->add_option("--q", q, "Hecke prime")->required();
    c_trace->add_option("--j", j, "weight j (even)")->required();
    c_trace->add_option("--k", k, "weight k (>= 3)")->required();
    c_trace->add_option("--power", power, "power d >= 1");

    auto* c_eig = app.add_subcommand(
        "eigenvalue", "paramodular Hecke eigenvalue b_q on a 1-dim new space");
    c_eig->add_option("--p", p, "ramified prime")->required();
    c_eig->add_option("--q", q, "Hecke prime")->required();
    c_eig->add_option("--j", j, "weight j (even)")->required();
    c_eig->add_option("--k", k, "weight k (>= 3)")->required();

    auto* c_verify = app.add_subcommand(
        "verify", "check the congruence for one (p, q, j, k, ell)");
    c_verify->add_option("--p", p, "ramified prime")->required();
    c_verify->add_option("--q", q, "Hecke prime")->required();
    c_verify->add_option("--j", j, "weight j (even)")->required();
    c_verify->add_option("--k", k, "weight k (>= 3)")->required();
    c_verify->add_option("--ell", ell,
                         "congruence prime (default: from the record)");
    c_verify->add_option("--record", record_file,
                         "eigenform record file overriding the bundled data");
    c_verify->add_option("--label", label, "record label when ambiguous");

    auto* c_table = app.add_subcommand(
        "verify-table", "run every bundled congruence row end to end");
    (void)c_table;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_gamma->parsed()) return run_gamma(opt, p, dump_norms);
        if (c_dims->parsed()) return run_dims(opt, p, jmax, kmax);
        if (c_reps->parsed()) return run_hecke_reps(opt, p, q, print_reps);
        if (c_trace->parsed()) return run_trace(opt, p, q, j, k, power);
        if (c_eig->parsed()) return run_eigenvalue(opt, p, q, j, k);
        if (c_verify->parsed())
            return run_verify(opt, p, q, j, k, ell, record_file, label);
        if (c_table->parsed()) return run_verify_table(opt);
    } catch (const class_number_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
