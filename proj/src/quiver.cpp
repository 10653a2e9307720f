#include "khall/quiver.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace khall {

long Quiver::edge_count(int a, int b) const {
    long c = 0;
    for (const auto& e : edges)
        if (e.src == a && e.dst == b) ++c;
    return c;
}

bool Quiver::check_symmetric() const {
    for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b)
            if (edge_count(a, b) != edge_count(b, a)) return false;
    return true;
}

void Quiver::validate() const {
    for (const auto& e : edges)
        if (e.src < 0 || e.src >= nv || e.dst < 0 || e.dst >= nv)
            throw std::runtime_error("edge endpoint out of range");
}

Quiver jordan_quiver() { return loop_quiver(1); }

Quiver loop_quiver(int loops) {
    Quiver q;
    q.nv = 1;
    for (int i = 0; i < loops; ++i) q.edges.push_back({0, 0});
    q.symmetric_flag = true;
    return q;
}

Quiver an_quiver(int n) {
    Quiver q;
    q.nv = n;
    for (int i = 0; i + 1 < n; ++i) q.edges.push_back({i, i + 1});
    q.symmetric_flag = (n <= 1);
    return q;
}

Quiver two_cycle_quiver() {
    Quiver q;
    q.nv = 2;
    q.edges.push_back({0, 1});
    q.edges.push_back({1, 0});
    q.symmetric_flag = true;
    return q;
}

Quiver doubled(const Quiver& q) {
    Quiver out;
    out.nv = q.nv;
    for (const auto& e : q.edges) {
        out.edges.push_back({e.src, e.dst, EdgeRole::Orig, 1, 0});
        out.edges.push_back({e.dst, e.src, EdgeRole::Bar, 0, 1});
    }
    out.symmetric_flag = true;
    return out;
}

Quiver tripled(const Quiver& q) {
    Quiver out = doubled(q);
    for (int v = 0; v < q.nv; ++v)
        out.edges.push_back({v, v, EdgeRole::Omega, -1, -1});
    out.symmetric_flag = true;
    return out;
}

Quiver framed(const Quiver& q, const DimVec& f) {
    if ((int)f.size() != q.nv) throw std::runtime_error("framing vector size mismatch");
    Quiver out = q;
    out.nv = q.nv + 1;
    const int fv = q.nv;
    for (int v = 0; v < q.nv; ++v) {
        if (f[v] < 0) throw std::runtime_error("framing vector must be nonnegative");
        for (long k = 0; k < f[v]; ++k) out.edges.push_back({fv, v});
    }
    out.symmetric_flag = false;
    return out;
}

long euler_form(const Quiver& q, const DimVec& d, const DimVec& e) {
    if ((int)d.size() != q.nv || (int)e.size() != q.nv)
        throw std::runtime_error("euler_form: vertex set mismatch");
    long s = 0;
    for (int v = 0; v < q.nv; ++v) s += d[v] * e[v];
    for (const auto& a : q.edges) s -= d[a.src] * e[a.dst];
    return s;
}

std::optional<Rat> slope(const std::vector<Rat>& theta, const DimVec& d) {
    if (theta.size() != d.size()) throw std::runtime_error("slope: size mismatch");
    long tot = total(d);
    if (tot == 0) return std::nullopt;
    Rat num = 0;
    for (size_t i = 0; i < d.size(); ++i) num += theta[i] * Rat((long)d[i]);
    Rat r = num / Rat(tot);
    r.canonicalize();
    return r;
}

long total(const DimVec& d) { return std::accumulate(d.begin(), d.end(), 0L); }

DimVec add(const DimVec& a, const DimVec& b) {
    DimVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

bool is_zero(const DimVec& d) {
    return std::all_of(d.begin(), d.end(), [](long x) { return x == 0; });
}

int lex_compare(const DimVec& a, const DimVec& b) {
    if (a.size() != b.size()) throw std::runtime_error("lex_compare: size mismatch");
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

bool is_refinement(const OrderedPartition& e, const OrderedPartition& d) {
    DimVec te(e.empty() ? (d.empty() ? DimVec{} : DimVec(d[0].size(), 0)) : DimVec(e[0].size(), 0));
    DimVec td = te;
    for (const auto& p : e) te = add(te, p);
    for (const auto& p : d) td = add(td, p);
    if (te != td) throw std::runtime_error("is_refinement: totals differ");

    // Split points are forced: prefix sums are strictly increasing.
    size_t i = 0;
    for (const auto& block : d) {
        DimVec acc(block.size(), 0);
        while (acc != block) {
            if (i >= e.size()) return false;
            acc = add(acc, e[i++]);
            for (size_t v = 0; v < block.size(); ++v)
                if (acc[v] > block[v]) return false;
        }
    }
    return i == e.size();
}

namespace {

void enum_parts(const DimVec& rest, OrderedPartition& cur, std::vector<OrderedPartition>& out) {
    if (is_zero(rest)) {
        out.push_back(cur);
        return;
    }
    // Enumerate nonzero sub-vectors of `rest` in lexicographic order.
    int n = (int)rest.size();
    DimVec part(n, 0);
    auto step = [&]() -> bool {
        for (int v = n - 1; v >= 0; --v) {
            if (part[v] < rest[v]) {
                ++part[v];
                for (int w = v + 1; w < n; ++w) part[w] = 0;
                return true;
            }
        }
        return false;
    };
    while (step()) {
        DimVec next(n);
        for (int v = 0; v < n; ++v) next[v] = rest[v] - part[v];
        cur.push_back(part);
        enum_parts(next, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<OrderedPartition> all_ordered_partitions(const DimVec& d) {
    std::vector<OrderedPartition> out;
    OrderedPartition cur;
    enum_parts(d, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<OrderedPartition> hn_types(const Quiver& q, const std::vector<Rat>& theta,
                                       const DimVec& d) {
    std::vector<OrderedPartition> out;
    for (auto& p : all_ordered_partitions(d)) {
        bool ok = true;
        for (size_t i = 0; i + 1 < p.size() && ok; ++i) {
            auto a = slope(theta, p[i]);
            auto b = slope(theta, p[i + 1]);
            // parts are nonzero, so slopes are finite
            if (!(*a < *b)) ok = false;
        }
        if (ok) out.push_back(std::move(p));
    }
    return out;
}

std::string quiver_to_json(const Quiver& q) {
    nlohmann::json j;
    j["vertices"] = q.nv;
    auto edges = nlohmann::json::array();
    for (const auto& e : q.edges) edges.push_back({e.src, e.dst});
    j["edges"] = edges;
    j["symmetric"] = q.symmetric_flag;
    bool labeled = std::any_of(q.edges.begin(), q.edges.end(),
                               [](const Edge& e) { return e.role != EdgeRole::Plain; });
    if (labeled) {
        auto roles = nlohmann::json::array();
        for (const auto& e : q.edges) {
            switch (e.role) {
                case EdgeRole::Orig: roles.push_back("orig"); break;
                case EdgeRole::Bar: roles.push_back("bar"); break;
                case EdgeRole::Omega: roles.push_back("omega"); break;
                default: roles.push_back("orig"); break;
            }
        }
        j["roles"] = roles;
    }
    return j.dump(2);
}

Quiver quiver_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Quiver q;
    q.nv = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::runtime_error("bad edge entry");
        q.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    q.symmetric_flag = j.value("symmetric", false);
    if (j.contains("roles")) {
        const auto& roles = j["roles"];
        if (roles.size() != q.edges.size()) throw std::runtime_error("roles length mismatch");
        for (size_t i = 0; i < q.edges.size(); ++i) {
            std::string r = roles[i].get<std::string>();
            if (r == "orig") { q.edges[i].role = EdgeRole::Orig; q.edges[i].wq1 = 1; q.edges[i].wq2 = 0; }
            else if (r == "bar") { q.edges[i].role = EdgeRole::Bar; q.edges[i].wq1 = 0; q.edges[i].wq2 = 1; }
            else if (r == "omega") { q.edges[i].role = EdgeRole::Omega; q.edges[i].wq1 = -1; q.edges[i].wq2 = -1; }
            else throw std::runtime_error("unknown edge role: " + r);
        }
    }
    q.validate();
    if (q.symmetric_flag && !q.check_symmetric())
        throw std::runtime_error("quiver flagged symmetric but c(i,i') != c(i',i)");
    return q;
}

Quiver load_quiver_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open quiver file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return quiver_from_json(ss.str());
}

} // namespace khall
