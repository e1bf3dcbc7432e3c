// mik: index iteration, jump-tuple search, Morse bookkeeping, and the
// multiplicity/stability certificate for closed-characteristic orbit systems.

#include <mik/mik.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mik;

constexpr int exit_error = 10;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Range {
    long long lo = 1, hi = 1;
};

Range parse_range(const std::string& s, const char* what) {
    auto pos = s.find("..");
    if (pos == std::string::npos)
        throw parse_error(std::string(what) + ": expected lo..hi, got '" + s + "'");
    try {
        return {std::stoll(s.substr(0, pos)), std::stoll(s.substr(pos + 2))};
    } catch (const std::exception&) {
        throw parse_error(std::string(what) + ": malformed range '" + s + "'");
    }
}

RadiusSq parse_radius(const std::string& tok) {
    if (tok.rfind("sqrt", 0) == 0) {
        long long p = std::stoll(tok.substr(4));
        return RadiusSq::sqrt_of(p);
    }
    if (tok.find('/') != std::string::npos) {
        auto pos = tok.find('/');
        rational_t v(integer_t(tok.substr(0, pos)), integer_t(tok.substr(pos + 1)));
        return RadiusSq::rational(v, tok);
    }
    if (tok.find('.') != std::string::npos || tok.find('e') != std::string::npos)
        return RadiusSq::irrational(real_t(tok), tok);
    return RadiusSq::rational(rational_t(integer_t(tok)), tok);
}

std::string omega_repr(const CirclePoint& w) {
    switch (w.kind()) {
        case CirclePoint::Kind::one: return "1";
        case CirclePoint::Kind::minus_one: return "-1";
        default: break;
    }
    const Angle& a = w.angle();
    if (a.is_rational())
        return "exp(i pi " + std::to_string(a.num()) + "/" + std::to_string(a.den()) + ")";
    return "exp(i " + a.value().str(20) + ")";
}

struct GlobalOpts {
    std::string format = "json";
    unsigned precision = 256;
    unsigned long long seed = 0;
    int threads = 1;
};

int run(int argc, char** argv) {
    CLI::App app{"index theory of closed characteristics: normal forms, splitting numbers,\n"
                 "index iteration, common index jump tuples, Morse ledgers, certificates"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--precision", g.precision,
                   "minimum working precision in bits (computations run at 256)");
    app.add_option("--seed", g.seed, "seed for randomized operations (reserved)");
    app.add_option("--threads", g.threads, "worker threads for scans")->check(CLI::PositiveNumber);

    // normal-form
    auto* nf = app.add_subcommand("normal-form", "emit block/decomposition matrices and spectra");
    std::string nf_system, nf_block, nf_orbit;
    nf->add_option("--system", nf_system, "system JSON file ('-' for stdin)");
    nf->add_option("--block", nf_block, "single block as inline JSON");
    nf->add_option("--orbit", nf_orbit, "restrict to one orbit label");

    // splitting
    auto* sp = app.add_subcommand("splitting", "splitting numbers S+/S- at a circle point");
    std::string sp_block, sp_omega;
    bool sp_oracle = false;
    sp->add_option("--block", sp_block, "block as inline JSON")->required();
    sp->add_option("--omega", sp_omega, "1 | -1 | pi:p/q | rad:<decimal>")->required();
    sp->add_flag("--oracle", sp_oracle, "compute through the spectral oracle instead of the table");

    // index
    auto* ix = app.add_subcommand("index", "iterate index table");
    std::string ix_system, ix_range = "1..10", ix_grading = "maslov";
    ix->add_option("--system", ix_system)->required();
    ix->add_option("--m-range", ix_range, "iterate range lo..hi");
    ix->add_option("--grading", ix_grading)->check(CLI::IsMember({"maslov", "viterbo"}));

    // mean
    auto* me = app.add_subcommand("mean", "mean indices and derived invariants");
    std::string me_system;
    me->add_option("--system", me_system)->required();

    // jump
    auto* jp = app.add_subcommand("jump", "search and verify common index jump tuples");
    std::string jp_system, jp_eps = "5e-2";
    double jp_nmax = 1e7;
    long long jp_want = 3;
    bool jp_conj = false;
    jp->add_option("--system", jp_system)->required();
    jp->add_option("--eps", jp_eps, "fractional tolerance in (0, 1/2)");
    jp->add_option("--nmax", jp_nmax, "search bound on N");
    jp->add_option("--want", jp_want, "number of tuples to return");
    jp->add_flag("--conjugate", jp_conj, "also locate a conjugate tuple for the first hit");

    // morse
    auto* mo = app.add_subcommand("morse", "Morse-type numbers, Betti numbers, u_p");
    std::string mo_system, mo_window = "-10..60";
    mo->add_option("--system", mo_system)->required();
    mo->add_option("--window", mo_window, "Viterbo-degree window lo..hi");

    // certify
    auto* ce = app.add_subcommand("certify", "run the multiplicity/stability certificate");
    std::string ce_system, ce_eps = "auto";
    double ce_nmax = 1e8;
    ce->add_option("--system", ce_system)->required();
    ce->add_option("--nmax", ce_nmax, "tuple search bound");
    ce->add_option("--eps", ce_eps, "fractional tolerance or 'auto'");

    // ellipsoid
    auto* el = app.add_subcommand("ellipsoid", "generate a weakly non-resonant ellipsoid system");
    int el_n = 0;
    std::string el_radii, el_emit;
    el->add_option("--n", el_n, "half-dimension")->required();
    el->add_option("--sq-radii", el_radii, "comma list: sqrt2,sqrt3,... | p/q | decimals")
        ->required();
    el->add_option("--emit", el_emit, "write the system JSON here (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (g.precision > real_significand_bits)
        throw domain_error("precision: this build computes at a fixed " +
                           std::to_string(real_significand_bits) +
                           "-bit significand; requested " + std::to_string(g.precision));
    if (g.precision < 64) throw domain_error("precision: need at least 64 bits");
    bool tsv = g.format == "tsv";

    if (nf->parsed()) {
        std::vector<std::pair<std::string, NormalFormDecomposition>> items;
        if (!nf_block.empty()) {
            auto blk = block_from_json(json::parse(nf_block), "block");
            items.emplace_back("block", NormalFormDecomposition({blk}, blk.dim() / 2));
        } else if (!nf_system.empty()) {
            auto sys = parse_system(read_input(nf_system));
            for (const auto& r : sys.records)
                if (nf_orbit.empty() || r.label == nf_orbit)
                    items.emplace_back(r.label, r.decomp);
        } else {
            throw parse_error("normal-form: need --system or --block");
        }
        if (tsv) {
            for (const auto& [label, d] : items) {
                Matrix m = d.matrix();
                for (int i = 0; i < m.n; ++i) {
                    std::cout << label;
                    for (int j = 0; j < m.n; ++j) std::cout << '\t' << m(i, j).str();
                    std::cout << '\n';
                }
            }
        } else {
            json out = json::array();
            for (const auto& [label, d] : items) {
                Matrix m = d.matrix();
                json jm = json::array();
                for (int i = 0; i < m.n; ++i) {
                    json row = json::array();
                    for (int j = 0; j < m.n; ++j) row.push_back(m(i, j).str());
                    jm.push_back(row);
                }
                auto chk = validate_symplectic(m);
                json spec = json::array();
                for (const auto& [w, nu] : spectrum_on_circle(d)) {
                    json e;
                    e["omega"] = omega_repr(w);
                    e["nu"] = nu;
                    spec.push_back(e);
                }
                json item;
                item["label"] = label;
                item["matrix"] = jm;
                item["symplectic"] = chk.ok;
                item["residual"] = chk.residual.str(8);
                item["circle_spectrum"] = spec;
                out.push_back(item);
            }
            std::cout << out.dump(2) << '\n';
        }
        return 0;
    }

    if (sp->parsed()) {
        auto blk = block_from_json(json::parse(sp_block), "block");
        CirclePoint w = parse_omega(sp_omega);
        SplittingPair pair;
        const char* source;
        if (sp_oracle) {
            pair = oracle_splitting(blk, w).pair;
            source = "oracle";
        } else {
            pair = block_splitting(blk, w);
            source = "table";
        }
        if (tsv) {
            std::cout << pair.s_plus << '\t' << pair.s_minus << '\t' << source << '\n';
        } else {
            json out;
            out["s_plus"] = pair.s_plus;
            out["s_minus"] = pair.s_minus;
            out["source"] = source;
            std::cout << out.dump() << '\n';
        }
        return 0;
    }

    if (ix->parsed()) {
        auto sys = parse_system(read_input(ix_system));
        Range r = parse_range(ix_range, "m-range");
        bool viterbo = ix_grading == "viterbo";
        json rows = json::array();
        for (const auto& rec : sys.records)
            for (long long m = r.lo; m <= r.hi; ++m) {
                long long i = viterbo ? viterbo_at(rec, m) : index_at(rec, m);
                long long nu = nullity_at(rec, m);
                if (tsv) {
                    std::cout << rec.label << '\t' << m << '\t' << i << '\t' << nu << '\n';
                } else {
                    json row;
                    row["label"] = rec.label;
                    row["m"] = m;
                    row["i"] = i;
                    row["nu"] = nu;
                    rows.push_back(row);
                }
            }
        if (!tsv) std::cout << rows.dump(2) << '\n';
        return 0;
    }

    if (me->parsed()) {
        auto sys = parse_system(read_input(me_system));
        json rows = json::array();
        for (const auto& rec : sys.records) {
            if (tsv) {
                std::cout << rec.label << '\t' << rec.i1 << '\t' << rec.s_plus_one << '\t'
                          << rec.c << '\t' << rec.mean.str() << '\n';
            } else {
                json row;
                row["label"] = rec.label;
                row["i1"] = rec.i1;
                row["s_plus_one"] = rec.s_plus_one;
                row["c"] = rec.c;
                row["mean"] = rec.mean.str();
                rows.push_back(row);
            }
        }
        if (!tsv) std::cout << rows.dump(2) << '\n';
        return 0;
    }

    if (jp->parsed()) {
        auto sys = parse_system(read_input(jp_system));
        real_t eps(jp_eps);
        long long mb = mbar(sys.records, sys.n);
        auto scan = scan_tuples(sys.records, mb, eps, static_cast<long long>(jp_nmax), jp_want,
                                g.threads);
        json out;
        out["mbar"] = mb;
        out["M"] = common_multiple(sys.records);
        out["exhausted"] = scan.exhausted;
        if (scan.exhausted) {
            out["scanned_to"] = scan.scanned_to;
            out["best_near_miss"] = scan.best_near_miss;
            out["best_near_miss_N"] = scan.best_near_miss_N;
        }
        json tuples = json::array();
        for (const auto& t : scan.tuples) {
            json jt;
            jt["tuple"] = tuple_to_json(t);
            jt["verification"] = verify_report_to_json(verify_tuple(sys.records, t, mb));
            tuples.push_back(jt);
        }
        out["tuples"] = tuples;
        bool conj_missing = false;
        if (jp_conj && !scan.tuples.empty()) {
            auto conj = conjugate_pair(sys.records, scan.tuples.front(), mb, eps,
                                       static_cast<long long>(jp_nmax), g.threads);
            if (conj.partner) {
                json jc;
                jc["tuple"] = tuple_to_json(*conj.partner);
                jc["verification"] =
                    verify_report_to_json(verify_tuple(sys.records, *conj.partner, mb));
                out["conjugate"] = jc;
            } else {
                out["conjugate"] = nullptr;
                conj_missing = true;
            }
        }
        std::cout << out.dump(2) << '\n';
        return scan.exhausted || conj_missing ? 2 : 0;
    }

    if (mo->parsed()) {
        auto sys = parse_system(read_input(mo_system));
        Range w = parse_range(mo_window, "window");
        auto led = morse_numbers(sys.records, w.lo, w.hi);
        json rows = json::array();
        for (long long p = w.lo; p <= w.hi; ++p) {
            auto u = morse_inequality(led, p);
            if (tsv) {
                std::cout << p << '\t' << led.morse_at(p) << '\t' << betti(p) << '\t'
                          << u.u.str() << '\n';
            } else {
                json row;
                row["p"] = p;
                row["M_p"] = led.morse_at(p);
                row["b_p"] = betti(p);
                row["u_p"] = u.u.str();
                rows.push_back(row);
            }
        }
        if (!tsv) std::cout << rows.dump(2) << '\n';
        return 0;
    }

    if (ce->parsed()) {
        auto sys = parse_system(read_input(ce_system));
        CertificateOptions opt;
        opt.n_max = static_cast<long long>(ce_nmax);
        opt.threads = g.threads;
        if (ce_eps != "auto") opt.eps = real_t(ce_eps);
        auto rep = certify(sys.records, sys.n, opt);
        std::cout << certificate_to_json(rep).dump(2) << '\n';
        switch (rep.verdict) {
            case Verdict::certified: return 0;
            case Verdict::non_realizable: return 1;
            default: return 2;
        }
    }

    if (el->parsed()) {
        EllipsoidSpec spec;
        spec.n = el_n;
        std::stringstream ss(el_radii);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.squared_radii.push_back(parse_radius(tok));
        auto records = ellipsoid_system(spec);
        SystemFile sys;
        sys.n = el_n;
        sys.provenance = "ellipsoid --n " + std::to_string(el_n) + " --sq-radii " + el_radii;
        sys.records = std::move(records);
        std::string text = emit_system(sys);
        if (el_emit.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(el_emit);
            if (!out) throw parse_error("cannot write '" + el_emit + "'");
            out << text;
        }
        return 0;
    }

    return exit_error;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mik::hypothesis_error& e) {
        std::cerr << "hypothesis error: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
}
