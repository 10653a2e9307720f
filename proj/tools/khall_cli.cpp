// Command-line front end: quiver-file ingestion, deterministic tables, and
// the PASS/FAIL check commands. Exit codes: 0 ok/PASS, 1 FAIL, 2 bad input,
// 3 capacity exceeded, 4 internal invariant violation.

#include "CLI11.hpp"
#include "json.hpp"

#include "khall/categories.hpp"
#include "khall/polytope.hpp"
#include "khall/quiver.hpp"
#include "khall/shuffle.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace khall;

namespace {

constexpr long kPolytopeCap = 8;
constexpr long kShuffleCap = 6;

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DimVec parse_dims(const std::string& s) {
    DimVec d;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) d.push_back(std::stol(tok));
    if (d.empty()) throw std::runtime_error("empty dimension vector");
    return d;
}

std::vector<Rat> parse_rats(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(parse_rat(tok));
    return out;
}

// pairs syntax: "d1,d2,...:w ; d1,d2,...:w ; ..."
std::vector<AdmissiblePair> parse_pairs(const std::string& s, int nv) {
    std::vector<AdmissiblePair> pairs;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw std::runtime_error("pair needs 'dims:w'");
        AdmissiblePair p;
        p.d = parse_dims(item.substr(0, colon));
        if ((int)p.d.size() != nv) throw std::runtime_error("pair dimension size mismatch");
        p.w = std::stol(item.substr(colon + 1));
        pairs.push_back(p);
    }
    if (pairs.empty()) throw std::runtime_error("no pairs given");
    return pairs;
}

void check_cap(const DimVec& d, long cap) {
    if (total(d) > cap) throw CapacityError("dimension cap exceeded");
}

std::string cochar_str(const Cochar& l) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < l.levels.size(); ++i) {
        if (i) os << " ";
        os << rat_str(l.levels[i]);
    }
    os << ")";
    return os.str();
}

Weight weight_from_coords(const DimVec& d, const std::vector<Rat>& coords) {
    Shape s(d);
    if ((long)coords.size() != s.nslots)
        throw std::runtime_error("weight coordinate count mismatch");
    Weight w(s);
    w.c = coords;
    return w;
}

nlohmann::json weight_json(const Weight& w) {
    auto arr = nlohmann::json::array();
    for (size_t v = 0; v < w.shape.d.size(); ++v) {
        auto block = nlohmann::json::array();
        for (long j = 0; j < w.shape.d[v]; ++j)
            block.push_back(rat_str(w.c[w.shape.offset((int)v) + j]));
        arr.push_back(block);
    }
    return arr;
}

ShuffleElement load_element(const std::string& path, const DimVec& d, int nparams) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polynomial file: " + path);
    VarLayout l;
    l.shape = Shape(d);
    l.nparams = nparams;
    LaurentPoly p(l.nvars());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string coeff;
        ss >> coeff;
        std::vector<int> e(l.nvars(), 0);
        for (int i = 0; i < l.nvars(); ++i)
            if (!(ss >> e[i])) {
                if (i < (int)l.shape.nslots)
                    throw std::runtime_error("polynomial line too short: " + line);
                break; // parameter exponents default to zero
            }
        p.add_term(e, parse_rat(coeff));
    }
    return ShuffleElement::poly(l, p);
}

void print_element(std::ostream& os, const ShuffleElement& e) {
    // one term per line: coeff, slot exponents, parameter exponents
    for (const auto& [ex, c] : e.num.terms) {
        os << rat_str(c);
        for (int i = 0; i < e.num.nvars; ++i) os << " " << ex[i];
        os << "\n";
    }
    for (const auto& [p, m] : e.den)
        for (long i = 0; i < m; ++i) {
            os << "# divided by:";
            for (const auto& [ex, c] : p.terms) {
                os << "  " << rat_str(c);
                for (int j = 0; j < p.nvars; ++j) os << " " << ex[j];
            }
            os << "\n";
        }
}

void enumerate_dominant(const Shape& s, Weight& w, long k, long bound,
                        std::vector<Weight>& out) {
    if (k == s.nslots) {
        out.push_back(w);
        return;
    }
    long ub = bound;
    int v = s.vertex_of(k);
    if (k > s.offset(v)) ub = std::min(ub, to_long(w.c[k - 1]));
    for (long val = ub; val >= -bound; --val) {
        w.c[k] = val;
        enumerate_dominant(s, w, k + 1, bound, out);
    }
    w.c[k] = 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations for K-theoretic Hall algebras of quivers"};
    app.require_subcommand(1);

    std::string quiver_path, f_path, g_path, kernel_name = "plain", pairs_str, format = "text";
    std::string dims_str, chi_str, dd_str, de_str;
    long wmin = 0, wmax = 0, bound = 2;
    unsigned seed = 1;
    int jobs = 0;
    int serre_n = 2;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "text|json");
        cmd->add_option("--seed", seed, "random seed for property suites");
        cmd->add_option("--jobs", jobs, "parallelism degree (0 = default)");
    };

    auto* rinv = app.add_subcommand("r-invariant", "r-invariant of a weight");
    rinv->add_option("--quiver", quiver_path)->required();
    rinv->add_option("--d", dims_str)->required();
    rinv->add_option("--chi", chi_str, "comma-separated rational coordinates")->required();
    add_common(rinv);

    auto* sform = app.add_subcommand("standard-form", "standard form of chi (acts on chi + rho)");
    sform->add_option("--quiver", quiver_path)->required();
    sform->add_option("--d", dims_str)->required();
    sform->add_option("--chi", chi_str)->required();
    add_common(sform);

    auto* adm = app.add_subcommand("admissible", "classify an ordered set of (d_i, w_i) pairs");
    adm->add_option("--quiver", quiver_path)->required();
    adm->add_option("--pairs", pairs_str, "\"d1,d2:w ; d1,d2:w\"")->required();
    add_common(adm);

    auto* mdim = app.add_subcommand("magic-dim", "generator counts per weight");
    mdim->add_option("--quiver", quiver_path)->required();
    mdim->add_option("--d", dims_str)->required();
    mdim->add_option("--w-min", wmin)->required();
    mdim->add_option("--w-max", wmax)->required();
    add_common(mdim);

    auto* pbw = app.add_subcommand("pbw-check", "standard-form decomposition check over a box");
    pbw->add_option("--quiver", quiver_path)->required();
    pbw->add_option("--d", dims_str)->required();
    pbw->add_option("--bound", bound)->required();
    add_common(pbw);

    auto* shf = app.add_subcommand("shuffle", "shuffle product of two elements");
    shf->add_option("--kernel", kernel_name, "plain|jordan|an:N|fo|edge");
    shf->add_option("--quiver", quiver_path, "required for plain/edge kernels");
    shf->add_option("--f", f_path)->required();
    shf->add_option("--g", g_path)->required();
    shf->add_option("--df", dd_str, "dimension vector of f")->required();
    shf->add_option("--dg", de_str, "dimension vector of g")->required();
    add_common(shf);

    auto* serre = app.add_subcommand("serre-check", "quantum Serre relation in the A_n zeta kernel");
    serre->add_option("--n", serre_n, "rank (adjacent vertex pairs checked)");
    add_common(serre);

    auto* mut = app.add_subcommand("mutation-check", "BBW mutation identity over a dominant grid");
    mut->add_option("--quiver", quiver_path)->required();
    mut->add_option("--dd", dd_str, "first dimension vector")->required();
    mut->add_option("--de", de_str, "second dimension vector")->required();
    mut->add_option("--bound", bound, "coordinate box for dominant weights");
    add_common(mut);

    auto* dnf = app.add_subcommand("dsym-nf", "normal form of a dSym word");
    dnf->add_option("--quiver", quiver_path)->required();
    dnf->add_option("--word", pairs_str, "\"d1,d2:w ; d1,d2:w\" in product order")->required();
    add_common(dnf);

    CLI11_PARSE(app, argc, argv);

    try {
#ifdef _OPENMP
        if (jobs > 0) omp_set_num_threads(jobs);
#endif
        if (rinv->parsed()) {
            Quiver q = load_quiver_file(quiver_path);
            DimVec d = parse_dims(dims_str);
            check_cap(d, kPolytopeCap);
            Weight chi = weight_from_coords(d, parse_rats(chi_str));
            Shape s(d);
            PolytopeSpec spec = make_polytope(q, s, Levi::trivial(s));
            auto r = r_invariant(spec, chi);
            std::string val = r ? rat_str(*r) : "inf";
            if (format == "json") {
                nlohmann::json j;
                j["r"] = val;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "r-invariant " << val << "\n";
            }
        } else if (sform->parsed()) {
            Quiver q = load_quiver_file(quiver_path);
            DimVec d = parse_dims(dims_str);
            check_cap(d, kPolytopeCap);
            Weight chi = weight_from_coords(d, parse_rats(chi_str));
            StandardForm sf = standard_form(q, d, chi);
            if (format == "json") {
                nlohmann::json j;
                auto nodes = nlohmann::json::array();
                for (const auto& n : sf.nodes) {
                    nlohmann::json nj;
                    auto lv = nlohmann::json::array();
                    for (const auto& x : n.lambda.levels) lv.push_back(rat_str(x));
                    nj["lambda"] = lv;
                    nj["r"] = rat_str(n.r);
                    nodes.push_back(nj);
                }
                j["nodes"] = nodes;
                j["residual"] = weight_json(sf.residual);
                j["residual_r"] = rat_str(sf.residual_r);
                j["residual_interior"] = sf.residual_interior;
                auto levi = nlohmann::json::array();
                for (const auto& b : sf.levi.blocks) levi.push_back(b);
                j["levi"] = levi;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "nodes " << sf.nodes.size() << "\n";
                for (const auto& n : sf.nodes)
                    std::cout << "  r " << rat_str(n.r) << "  lambda " << cochar_str(n.lambda)
                              << "\n";
                std::cout << "residual " << weight_str(sf.residual) << "  r "
                          << rat_str(sf.residual_r)
                          << (sf.residual_interior ? " interior" : " boundary") << "\n";
                std::cout << "levi";
                for (const auto& b : sf.levi.blocks) {
                    std::cout << " {";
                    for (size_t i = 0; i < b.size(); ++i) std::cout << (i ? " " : "") << b[i];
                    std::cout << "}";
                }
                std::cout << "\n";
            }
        } else if (adm->parsed()) {
            Quiver q = load_quiver_file(quiver_path);
            auto pairs = parse_pairs(pairs_str, q.nv);
            DimVec tot(q.nv, 0);
            for (const auto& p : pairs) tot = add(tot, p.d);
            check_cap(tot, kPolytopeCap);
            auto v = classify_admissible(q, pairs);
            if (format == "json") {
                nlohmann::json j;
                j["admissible"] = v.admissible;
                j["all_big"] = v.all_big;
                j["all_half"] = v.all_half;
                j["big_nodes"] = v.big_tree.size();
                j["half_nodes"] = v.half_group.size();
                std::cout << j.dump() << "\n";
            } else {
                if (!v.admissible) {
                    std::cout << "NotAdmissible\n";
                } else {
                    std::cout << "Admissible";
                    if (v.all_big) std::cout << " (r > 1/2)";
                    if (v.all_half) std::cout << " (r = 1/2)";
                    std::cout << "\n";
                }
                for (const auto& n : v.big_tree)
                    std::cout << "  big  r " << rat_str(n.r) << "  lambda " << cochar_str(n.lambda)
                              << "\n";
                for (const auto& n : v.half_group)
                    std::cout << "  half r 1/2  lambda " << cochar_str(n.lambda) << "\n";
            }
        } else if (mdim->parsed()) {
            Quiver q = load_quiver_file(quiver_path);
            DimVec d = parse_dims(dims_str);
            check_cap(d, kPolytopeCap);
            if (wmin > wmax) throw std::runtime_error("w-min must be <= w-max");
            RankCache cache;
            long total_n = 0;
            std::ostringstream table;
            for (long w = wmin; w <= wmax; ++w) {
                long nb = nbar_rank(q, d, w, cache);
                long n = n_rank(q, d, w, cache);
                total_n += n;
                table << w << " " << nb << " " << n << "\n";
            }
            if (format == "json") {
                nlohmann::json j;
                auto rows = nlohmann::json::array();
                for (long w = wmin; w <= wmax; ++w)
                    rows.push_back({w, nbar_rank(q, d, w, cache), n_rank(q, d, w, cache)});
                j["rows"] = rows;
                j["total_n"] = total_n;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "w nbar n\n" << table.str() << "total " << total_n << "\n";
            }
        } else if (pbw->parsed()) {
            Quiver q = load_quiver_file(quiver_path);
            DimVec d = parse_dims(dims_str);
            check_cap(d, kPolytopeCap);
            auto report = pbw_bijection_check(q, d, bound);
            std::cout << (report.pass() ? "PASS" : "FAIL") << " checked " << report.checked
                      << "\n";
            for (const auto& f : report.failures) std::cout << "  " << f << "\n";
            if (!report.pass()) return 1;
        } else if (shf->parsed()) {
            Kernel k;
            if (kernel_name == "plain") k = Kernel::plain(load_quiver_file(quiver_path));
            else if (kernel_name == "jordan") k = Kernel::jordan_eq();
            else if (kernel_name.rfind("an:", 0) == 0)
                k = Kernel::tripled_an(std::stoi(kernel_name.substr(3)));
            else if (kernel_name == "fo") k = Kernel::feigin_odeskii();
            else if (kernel_name == "edge")
                k = Kernel::edge_weighted(load_quiver_file(quiver_path));
            else throw std::runtime_error("unknown kernel: " + kernel_name);
            DimVec df = parse_dims(dd_str), dg = parse_dims(de_str);
            check_cap(add(df, dg), kShuffleCap);
            ShuffleElement f = load_element(f_path, df, k.nparams);
            ShuffleElement g = load_element(g_path, dg, k.nparams);
            ShuffleElement p = shuffle_mul(k, f, g);
            print_element(std::cout, p);
        } else if (serre->parsed()) {
            Kernel z = Kernel::sh_zeta(serre_n);
            bool ok = true;
            std::string counterexample;
            for (int i = 0; i + 1 < serre_n && ok; ++i)
                for (int sw = 0; sw < 2 && ok; ++sw) {
                    int a = sw ? i + 1 : i;
                    int b = sw ? i : i + 1;
                    DimVec da(serre_n, 0), db(serre_n, 0);
                    da[a] = 1;
                    db[b] = 1;
                    VarLayout la, lb;
                    la.shape = Shape(da);
                    la.nparams = 1;
                    lb.shape = Shape(db);
                    lb.nparams = 1;
                    ShuffleElement ea =
                        ShuffleElement::poly(la, LaurentPoly::constant(la.nvars(), Rat(1)));
                    ShuffleElement eb =
                        ShuffleElement::poly(lb, LaurentPoly::constant(lb.nvars(), Rat(1)));
                    ShuffleElement p1 = shuffle_mul(z, shuffle_mul(z, ea, ea), eb);
                    ShuffleElement p2 = shuffle_mul(z, shuffle_mul(z, ea, eb), ea);
                    ShuffleElement p3 = shuffle_mul(z, eb, shuffle_mul(z, ea, ea));
                    int nv = p2.layout.nvars();
                    std::vector<int> qe(nv, 0), qi(nv, 0);
                    qe[p2.layout.param_var(0)] = 1;
                    qi[p2.layout.param_var(0)] = -1;
                    LaurentPoly qpq = LaurentPoly::monomial(nv, qe, Rat(1)) +
                                      LaurentPoly::monomial(nv, qi, Rat(1));
                    LaurentPoly lhs = p1.num * p2.den_product() * p3.den_product();
                    LaurentPoly mid = qpq * p2.num * p1.den_product() * p3.den_product();
                    LaurentPoly rhs = p3.num * p1.den_product() * p2.den_product();
                    if (!(lhs - mid + rhs).is_zero()) {
                        ok = false;
                        counterexample = "adjacent pair (" + std::to_string(a) + "," +
                                         std::to_string(b) + ")";
                    }
                }
            std::cout << (ok ? "PASS" : "FAIL (first counterexample: " + counterexample + ")")
                      << " serre n=" << serre_n
                      << "  [convention: e_{k+1}e_l - q e_l e_{k+1} = q e_k e_{l+1} - e_{l+1}e_k]"
                      << "\n";
            if (!ok) return 1;
        } else if (mut->parsed()) {
            Quiver q = load_quiver_file(quiver_path);
            DimVec dd = parse_dims(dd_str), de = parse_dims(de_str);
            check_cap(add(dd, de), kShuffleCap);
            Shape sd(dd), se(de);
            bool ok = true;
            std::string counterexample;
            std::vector<Weight> lefts, rights;
            Weight wd(sd), we(se);
            enumerate_dominant(sd, wd, 0, bound, lefts);
            enumerate_dominant(se, we, 0, bound, rights);
            for (const auto& a : lefts) {
                for (const auto& b : rights)
                    if (!mutation_check(q, dd, de, a, b)) {
                        ok = false;
                        counterexample = weight_str(a) + " x " + weight_str(b);
                        break;
                    }
                if (!ok) break;
            }
            std::cout << (ok ? "PASS" : "FAIL at " + counterexample) << "\n";
            if (!ok) return 1;
        } else if (dnf->parsed()) {
            Quiver q = load_quiver_file(quiver_path);
            auto pairs = parse_pairs(pairs_str, q.nv);
            DSymWord word;
            for (const auto& p : pairs) word.gens.push_back({p.d, p.w, 0});
            DSymWord nf = dsym_normal_form(q, word);
            if (nf.coeff == 0) {
                std::cout << "0\n";
            } else {
                std::cout << rat_str(nf.coeff);
                for (const auto& g : nf.gens) {
                    std::cout << "  x[";
                    for (size_t v = 0; v < g.d.size(); ++v)
                        std::cout << (v ? "," : "") << g.d[v];
                    std::cout << ";" << g.w << "]";
                }
                std::cout << "\n";
            }
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        if (msg.find("convention bug") != std::string::npos ||
            msg.find("no progress") != std::string::npos ||
            msg.find("reconstruction failed") != std::string::npos) {
            std::cerr << "internal invariant violation: " << msg << "\n";
            return 4;
        }
        std::cerr << "error: " << msg << "\n";
        return 2;
    }
    return 0;
}
