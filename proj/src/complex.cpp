#include "qmoore/complex.hpp"

#include <algorithm>
#include <sstream>

namespace qmoore {

RingElement RingMatrix::entry(int r, int c) const {
    check_index(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? RingElement::zero(spec_, kind_) : it->second;
}

void RingMatrix::set(int r, int c, const RingElement& x) {
    check_index(r, c);
    if (x.spec() != spec_) throw TypeError("entry over wrong group");
    if (x.is_zero())
        entries_.erase({r, c});
    else
        entries_.insert_or_assign({r, c}, x.to_kind(kind_));
}

void RingMatrix::check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw InvariantViolation("matrix index out of range");
}

bool RingMatrix::operator==(const RingMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && spec_ == rhs.spec_ &&
           entries_ == rhs.entries_;
}

int RingMatrix::max_entry_radius() const {
    int r = 0;
    for (const auto& [rc, x] : entries_) r = std::max(r, x.radius());
    return r;
}

RingMatrix RingMatrix::add(const RingMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InvariantViolation("matrix shape mismatch in add");
    RingMatrix out = *this;
    for (const auto& [rc, x] : rhs.entries_) out.set(rc.first, rc.second, out.entry(rc.first, rc.second) + x);
    return out;
}

RingMatrix RingMatrix::scaled(const Rat& c) const {
    RingMatrix out(spec_, rows_, cols_, kind_);
    if (c == 0) return out;
    for (const auto& [rc, x] : entries_) out.set(rc.first, rc.second, x.scaled(c));
    return out;
}

RingMatrix RingMatrix::compose(const RingMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvariantViolation("matrix shape mismatch in compose");
    if (spec_ != rhs.spec_) throw TypeError("matrices over different groups");
    RingMatrix out(spec_, rows_, rhs.cols_, kind_);
    std::map<std::pair<int, int>, RingElement> acc;
    for (const auto& [rc_b, b] : rhs.entries_) {
        const auto [k, j] = rc_b;
        for (const auto& [rc_a, a] : entries_) {
            const auto [i, ak] = rc_a;
            if (ak != k) continue;
            // left-module convention: coefficient of e_i is B_kj * A_ik
            RingElement prod = b * a;
            auto it = acc.find({i, j});
            if (it == acc.end())
                acc.emplace(std::make_pair(i, j), std::move(prod));
            else
                it->second = it->second + prod;
        }
    }
    for (const auto& [rc, x] : acc) out.set(rc.first, rc.second, x);
    return out;
}

RingMatrix RingMatrix::dual() const {
    RingMatrix out(spec_, cols_, rows_, kind_);
    for (const auto& [rc, x] : entries_) out.set(rc.second, rc.first, x.involute());
    return out;
}

RingMatrix RingMatrix::embed(const GroupSpec& target, int factor_offset) const {
    RingMatrix out(target, rows_, cols_, kind_);
    for (const auto& [rc, x] : entries_) out.set(rc.first, rc.second, x.embed(target, factor_offset));
    return out;
}

RingMatrix RingMatrix::to_kind(ScalarKind kind) const {
    RingMatrix out(spec_, rows_, cols_, kind);
    for (const auto& [rc, x] : entries_) out.set(rc.first, rc.second, x.to_kind(kind));
    return out;
}

QMat RingMatrix::augmented() const {
    QMat out(rows_, cols_);
    for (const auto& [rc, x] : entries_) out.at(rc.first, rc.second) = x.augmentation();
    return out;
}

int FreeComplex::rank(int degree) const {
    return in_range(degree) ? ranks[degree - lo] : 0;
}

void FreeComplex::validate() const {
    if (hi < lo) throw InvariantViolation("empty complex range");
    if (static_cast<int>(ranks.size()) != hi - lo + 1)
        throw InvariantViolation("rank table does not match degree range");
    for (int n = lo + 1; n <= hi; ++n) {
        auto it = boundary.find(n);
        if (rank(n) == 0 || rank(n - 1) == 0) {
            if (it != boundary.end() && !it->second.is_zero())
                throw InvariantViolation("boundary into/out of a zero module");
            continue;
        }
        if (it == boundary.end()) continue;  // zero boundary is implicit
        if (it->second.rows() != rank(n - 1) || it->second.cols() != rank(n))
            throw InvariantViolation("boundary shape mismatch at degree " + std::to_string(n));
        if (it->second.spec() != spec) throw TypeError("boundary over wrong group");
    }
    for (int n = lo + 2; n <= hi; ++n) {
        auto a = boundary.find(n - 1);
        auto b = boundary.find(n);
        if (a == boundary.end() || b == boundary.end()) continue;
        if (!a->second.compose(b->second).is_zero())
            throw InvariantViolation("dd != 0 at degree " + std::to_string(n));
    }
}

long long FreeComplex::euler_characteristic() const {
    long long chi = 0;
    for (int n = lo; n <= hi; ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(rank(n));
    return chi;
}

int ScalarComplex::rank(int degree) const {
    return in_range(degree) ? ranks[degree - lo] : 0;
}

void ScalarComplex::validate() const {
    if (hi < lo) throw InvariantViolation("empty complex range");
    if (static_cast<int>(ranks.size()) != hi - lo + 1)
        throw InvariantViolation("rank table does not match degree range");
    for (int n = lo + 1; n <= hi; ++n) {
        auto it = boundary.find(n);
        if (it == boundary.end()) continue;
        if (it->second.rows != rank(n - 1) || it->second.cols != rank(n))
            throw InvariantViolation("boundary shape mismatch at degree " + std::to_string(n));
    }
    for (int n = lo + 2; n <= hi; ++n) {
        auto a = boundary.find(n - 1);
        auto b = boundary.find(n);
        if (a == boundary.end() || b == boundary.end()) continue;
        if (!a->second.mul(b->second).is_zero())
            throw InvariantViolation("dd != 0 at degree " + std::to_string(n));
    }
}

long long ScalarComplex::euler_characteristic() const {
    long long chi = 0;
    for (int n = lo; n <= hi; ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(rank(n));
    return chi;
}

int HomologySummary::betti_at(int degree) const {
    if (degree < lo || degree > hi) return 0;
    return betti[degree - lo];
}

std::string HomologySummary::str() const {
    std::ostringstream os;
    for (int n = lo; n <= hi; ++n) {
        os << "H_" << n << ": dim " << betti[n - lo];
        const auto& tor = torsion[n - lo];
        if (!tor.empty()) {
            os << ", torsion";
            for (const auto& t : tor) os << ' ' << t;
        }
        os << '\n';
    }
    return os.str();
}

namespace {

QMat boundary_or_zero(const ScalarComplex& s, int n) {
    auto it = s.boundary.find(n);
    if (it != s.boundary.end()) return it->second;
    return QMat(s.rank(n - 1), s.rank(n));
}

}  // namespace

HomologySummary homology(const ScalarComplex& s) {
    s.validate();
    HomologySummary out;
    out.lo = s.lo;
    out.hi = s.hi;
    for (int n = s.lo; n <= s.hi; ++n) {
        QMat dn = boundary_or_zero(s, n);
        QMat dn1 = boundary_or_zero(s, n + 1);
        int rn = n > s.lo ? rank_q(dn) : 0;
        int rn1 = n < s.hi ? rank_q(dn1) : 0;
        out.betti.push_back(s.rank(n) - rn - rn1);
        std::vector<Int> tor;
        if (n < s.hi && dn1.is_integral()) {
            auto snf = smith_normal_form(to_integer(dn1));
            for (const auto& dgn : snf.diagonal)
                if (dgn != 1) tor.push_back(dgn);
        }
        out.torsion.push_back(std::move(tor));
    }
    return out;
}

HomologySummary homology_gf2(const ScalarComplex& s) {
    s.validate();
    HomologySummary out;
    out.lo = s.lo;
    out.hi = s.hi;
    for (int n = s.lo; n <= s.hi; ++n) {
        QMat dn = boundary_or_zero(s, n);
        QMat dn1 = boundary_or_zero(s, n + 1);
        int rn = n > s.lo ? rank_gf2(dn) : 0;
        int rn1 = n < s.hi ? rank_gf2(dn1) : 0;
        out.betti.push_back(s.rank(n) - rn - rn1);
        out.torsion.emplace_back();
    }
    return out;
}

FreeComplex fox_complex(int k) {
    if (k < 1) throw InputError("free-group rank must be >= 1");
    GroupSpec spec({k});
    FreeComplex c;
    c.spec = spec;
    c.lo = 0;
    c.hi = 1;
    c.ranks = {1, k};
    RingMatrix d1(spec, 1, k);
    for (int i = 0; i < k; ++i) d1.set(0, i, RingElement::fox_generator(spec, i + 1));
    c.boundary.emplace(1, std::move(d1));
    return c;
}

FreeComplex classifying_complex(const GroupSpec& spec) {
    FreeComplex c = fox_complex(spec.factors[0]);
    for (int f = 1; f < spec.factor_count(); ++f) c = tensor(c, fox_complex(spec.factors[f]));
    return c;
}

FreeComplex tensor(const FreeComplex& c, const FreeComplex& cprime) {
    GroupSpec spec;
    {
        std::vector<int> factors = c.spec.factors;
        factors.insert(factors.end(), cprime.spec.factors.begin(), cprime.spec.factors.end());
        spec = GroupSpec(std::move(factors));
    }
    const int offset = c.spec.factor_count();
    FreeComplex out;
    out.spec = spec;
    out.lo = c.lo + cprime.lo;
    out.hi = c.hi + cprime.hi;

    // basis of degree n: (p, i, j), p ascending, i outer, j inner
    auto index_of = [&](int n, int p, int i, int j) {
        int idx = 0;
        for (int q = c.lo; q < p; ++q)
            if (cprime.in_range(n - q)) idx += c.rank(q) * cprime.rank(n - q);
        return idx + i * cprime.rank(n - p) + j;
    };
    for (int n = out.lo; n <= out.hi; ++n) {
        int r = 0;
        for (int p = c.lo; p <= c.hi; ++p) r += c.rank(p) * cprime.rank(n - p);
        out.ranks.push_back(r);
    }
    for (int n = out.lo + 1; n <= out.hi; ++n) {
        RingMatrix d(spec, out.rank(n - 1), out.rank(n));
        for (int p = c.lo; p <= c.hi; ++p) {
            int q = n - p;
            if (!cprime.in_range(q)) continue;
            for (int i = 0; i < c.rank(p); ++i)
                for (int j = 0; j < cprime.rank(q); ++j) {
                    int col = index_of(n, p, i, j);
                    auto dc = c.boundary.find(p);
                    if (p > c.lo && dc != c.boundary.end()) {
                        for (const auto& [rc, x] : dc->second.entries()) {
                            if (rc.second != i) continue;
                            int row = index_of(n - 1, p - 1, rc.first, j);
                            d.set(row, col, d.entry(row, col) + x.embed(spec, 0));
                        }
                    }
                    auto dcp = cprime.boundary.find(q);
                    if (q > cprime.lo && dcp != cprime.boundary.end()) {
                        Rat sign = (p % 2 == 0) ? Rat(1) : Rat(-1);
                        for (const auto& [rc, x] : dcp->second.entries()) {
                            if (rc.second != j) continue;
                            int row = index_of(n - 1, p, i, rc.first);
                            d.set(row, col, d.entry(row, col) + x.embed(spec, offset).scaled(sign));
                        }
                    }
                }
        }
        if (!d.is_zero()) out.boundary.emplace(n, std::move(d));
    }
    return out;
}

FreeComplex dualize(const FreeComplex& c, int top) {
    FreeComplex out;
    out.spec = c.spec;
    out.lo = top - c.hi;
    out.hi = top - c.lo;
    for (int n = out.lo; n <= out.hi; ++n) out.ranks.push_back(c.rank(top - n));
    // d^dual_n : (C_{top-n})^* -> (C_{top-n+1})^* is the dual of d_{top-n+1}.
    for (int n = out.lo + 1; n <= out.hi; ++n) {
        auto it = c.boundary.find(top - n + 1);
        if (it == c.boundary.end()) continue;
        out.boundary.emplace(n, it->second.dual());
    }
    return out;
}

ScalarComplex coinvariants(const FreeComplex& c) {
    ScalarComplex out;
    out.lo = c.lo;
    out.hi = c.hi;
    out.ranks = c.ranks;
    for (const auto& [n, d] : c.boundary) {
        QMat q = d.augmented();
        if (!q.is_zero()) out.boundary.emplace(n, std::move(q));
    }
    return out;
}

void ModulePresentation::validate() const {
    if (generators < 0) throw InvariantViolation("negative generator count");
    if (relations.rows() != generators)
        throw InvariantViolation("relation matrix shape inconsistent with generator count");
    for (int g : trivial_action_generators)
        if (g < 0 || g >= generators)
            throw InvariantViolation("trivial-action flag out of range");
}

DualizingResolution dualizing_resolution(const GroupSpec& spec, int r) {
    if (r < 2) throw InputError("dualizing resolution requires r >= 2");
    DualizingResolution out;
    out.r = r;
    out.d = spec.factor_count();
    FreeComplex classify = classifying_complex(spec);
    FreeComplex f = dualize(classify, r + out.d);
    // place it in degrees r..r+d
    if (f.lo != r || f.hi != r + out.d) throw InvariantViolation("dual complex degree bookkeeping");
    out.complex = f;

    ModulePresentation pres;
    pres.spec = spec;
    pres.generators = f.rank(r);
    auto it = f.boundary.find(r + 1);
    pres.relations = it != f.boundary.end()
                         ? it->second
                         : RingMatrix(spec, pres.generators, f.rank(r + 1));
    pres.validate();
    out.dualizing_module = std::move(pres);
    return out;
}

std::string write_complex(const FreeComplex& c) {
    std::ostringstream os;
    os << "complex v1\n";
    os << "group " << c.spec.str() << '\n';
    os << "degrees " << c.lo << ' ' << c.hi << '\n';
    for (int n = c.lo; n <= c.hi; ++n) os << "rank " << n << ' ' << c.rank(n) << '\n';
    for (const auto& [n, d] : c.boundary) {
        os << "boundary " << n << '\n';
        for (const auto& [rc, x] : d.entries())
            os << "entry " << rc.first << ' ' << rc.second << ' ' << x.str() << '\n';
        os << "end\n";
    }
    return os.str();
}

FreeComplex read_complex(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    FreeComplex c;
    if (!std::getline(is, line) || line != "complex v1") throw InputError("bad complex header");
    bool have_group = false;
    std::map<int, int> ranks;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "group") {
            std::string g;
            ls >> g;
            c.spec = GroupSpec::parse(g);
            have_group = true;
        } else if (tok == "degrees") {
            ls >> c.lo >> c.hi;
        } else if (tok == "rank") {
            int n, r;
            ls >> n >> r;
            ranks[n] = r;
        } else if (tok == "boundary") {
            if (!have_group) throw InputError("boundary before group");
            int n;
            ls >> n;
            c.ranks.assign(static_cast<size_t>(c.hi - c.lo + 1), 0);
            for (const auto& [deg, r] : ranks) c.ranks[deg - c.lo] = r;
            RingMatrix d(c.spec, c.rank(n - 1), c.rank(n));
            std::string entry_line;
            while (std::getline(is, entry_line) && entry_line != "end") {
                std::istringstream es(entry_line);
                std::string etok;
                int row, col;
                es >> etok >> row >> col;
                if (etok != "entry") throw InputError("bad matrix block line: " + entry_line);
                std::string rest;
                std::getline(es, rest);
                if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
                d.set(row, col, RingElement::parse(c.spec, rest));
            }
            c.boundary.emplace(n, std::move(d));
        } else {
            throw InputError("unknown complex file line: " + line);
        }
    }
    c.ranks.assign(static_cast<size_t>(c.hi - c.lo + 1), 0);
    for (const auto& [deg, r] : ranks) c.ranks[deg - c.lo] = r;
    c.validate();
    return c;
}

}  // namespace qmoore
