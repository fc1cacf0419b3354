#include "qmoore/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qmoore {

GroupSpec::GroupSpec(std::vector<int> f) : factors(std::move(f)) {
    if (factors.empty())
        throw InputError("group spec needs at least one free factor");
    for (int k : factors)
        if (k < 1)
            throw InputError("free-group rank must be >= 1");
    if (total_generators() > 26)
        throw InputError("at most 26 generators supported by the letter alphabet");
}

int GroupSpec::total_generators() const {
    return std::accumulate(factors.begin(), factors.end(), 0);
}

int GroupSpec::letter_offset(int factor) const {
    int off = 0;
    for (int i = 0; i < factor; ++i) off += factors[i];
    return off;
}

int GroupSpec::factor_of_letter(int letter) const {
    int off = 0;
    for (int i = 0; i < factor_count(); ++i) {
        if (letter < off + factors[i]) return i;
        off += factors[i];
    }
    throw InputError("letter index out of range");
}

std::string GroupSpec::str() const {
    std::ostringstream os;
    int i = 0;
    bool first = true;
    while (i < factor_count()) {
        int j = i;
        while (j < factor_count() && factors[j] == factors[i]) ++j;
        if (!first) os << '*';
        os << 'f' << factors[i];
        if (j - i > 1) os << '^' << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

GroupSpec GroupSpec::parse(const std::string& text) {
    std::vector<int> ranks;
    size_t i = 0;
    auto read_int = [&](const char* what) {
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw InputError(std::string("expected ") + what + " in group spec '" + text + "'");
        return std::stoi(text.substr(start, i - start));
    };
    while (i < text.size()) {
        if (text[i] != 'f' && text[i] != 'F')
            throw InputError("bad group spec '" + text + "': expected 'f<rank>'");
        ++i;
        int rank = read_int("rank");
        int reps = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            reps = read_int("power");
        }
        if (reps < 1) throw InputError("bad repetition in group spec");
        for (int r = 0; r < reps; ++r) ranks.push_back(rank);
        if (i < text.size()) {
            if (text[i] != '*') throw InputError("bad separator in group spec '" + text + "'");
            ++i;
        }
    }
    return GroupSpec(std::move(ranks));
}

void GroupElement::check_reduced(const Word& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] == -w[i - 1])
            throw InvariantViolation("group word is not freely reduced");
}

GroupElement GroupElement::identity(const GroupSpec& spec) {
    GroupElement g;
    g.words_.resize(spec.factor_count());
    return g;
}

GroupElement GroupElement::reduce(const GroupSpec& spec, const std::vector<int>& raw_letters) {
    GroupElement g = identity(spec);
    const int total = spec.total_generators();
    for (int signed_letter : raw_letters) {
        if (signed_letter == 0) throw InputError("letter index 0 is not a generator");
        int letter = std::abs(signed_letter) - 1;
        if (letter >= total) throw InputError("unknown generator symbol");
        int factor = spec.factor_of_letter(letter);
        std::int16_t local =
            static_cast<std::int16_t>(letter - spec.letter_offset(factor) + 1);
        if (signed_letter < 0) local = static_cast<std::int16_t>(-local);
        Word& w = g.words_[factor];
        if (!w.empty() && w.back() == -local)
            w.pop_back();
        else
            w.push_back(local);
    }
    return g;
}

int GroupElement::length() const {
    int n = 0;
    for (const Word& w : words_) n += static_cast<int>(w.size());
    return n;
}

GroupElement GroupElement::mul(const GroupElement& rhs) const {
    if (factor_count() != rhs.factor_count())
        throw TypeError("group element factor mismatch");
    GroupElement out;
    out.words_.resize(words_.size());
    for (size_t f = 0; f < words_.size(); ++f) {
        Word w = words_[f];
        size_t i = 0;
        const Word& v = rhs.words_[f];
        while (!w.empty() && i < v.size() && w.back() == -v[i]) {
            w.pop_back();
            ++i;
        }
        w.insert(w.end(), v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
        out.words_[f] = std::move(w);
    }
    return out;
}

GroupElement GroupElement::inverse() const {
    GroupElement out;
    out.words_.resize(words_.size());
    for (size_t f = 0; f < words_.size(); ++f) {
        const Word& w = words_[f];
        Word v(w.rbegin(), w.rend());
        for (auto& x : v) x = static_cast<std::int16_t>(-x);
        out.words_[f] = std::move(v);
    }
    return out;
}

GroupElement GroupElement::embed(const GroupSpec& target, int factor_offset) const {
    if (factor_offset < 0 || factor_offset + factor_count() > target.factor_count())
        throw TypeError("embed: factor range out of bounds");
    GroupElement out = identity(target);
    for (int f = 0; f < factor_count(); ++f) out.words_[factor_offset + f] = words_[f];
    return out;
}

std::string GroupElement::str(const GroupSpec& spec) const {
    if (factor_count() != spec.factor_count())
        throw TypeError("element/spec factor mismatch");
    std::ostringstream os;
    for (int f = 0; f < factor_count(); ++f) {
        if (f > 0) os << '|';
        const Word& w = words_[f];
        if (w.empty()) {
            os << 'e';
            continue;
        }
        size_t i = 0;
        bool first = true;
        while (i < w.size()) {
            size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            char base = static_cast<char>('a' + spec.letter_offset(f) + std::abs(w[i]) - 1);
            if (w[i] < 0) base = static_cast<char>(std::toupper(base));
            if (!first) os << '*';
            os << base;
            if (j - i > 1) os << '^' << (j - i);
            first = false;
            i = j;
        }
    }
    return os.str();
}

GroupElement GroupElement::parse(const GroupSpec& spec, const std::string& text) {
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char c : text) {
            if (c == '|') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
    }
    if (static_cast<int>(parts.size()) != spec.factor_count())
        throw InputError("element '" + text + "' has wrong number of factors for " + spec.str());
    std::vector<int> letters;
    for (int f = 0; f < spec.factor_count(); ++f) {
        const std::string& p = parts[f];
        if (p == "e") continue;
        if (p.empty()) throw InputError("empty factor word in '" + text + "'");
        size_t i = 0;
        while (i < p.size()) {
            char c = p[i];
            if (!std::isalpha(static_cast<unsigned char>(c)))
                throw InputError("bad letter '" + std::string(1, c) + "' in '" + text + "'");
            bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
            int global = std::tolower(static_cast<unsigned char>(c)) - 'a';
            if (global >= spec.total_generators() || spec.factor_of_letter(global) != f)
                throw InputError("unknown generator symbol '" + std::string(1, c) + "' in factor " +
                                 std::to_string(f));
            ++i;
            long power = 1;
            if (i < p.size() && p[i] == '^') {
                ++i;
                size_t start = i;
                while (i < p.size() && std::isdigit(static_cast<unsigned char>(p[i]))) ++i;
                if (start == i) throw InputError("missing exponent in '" + text + "'");
                power = std::stol(p.substr(start, i - start));
                if (power < 1) throw InputError("exponent must be positive");
            }
            for (long rep = 0; rep < power; ++rep)
                letters.push_back(inv ? -(global + 1) : (global + 1));
            if (i < p.size()) {
                if (p[i] != '*') throw InputError("bad syllable separator in '" + text + "'");
                ++i;
                if (i == p.size()) throw InputError("trailing '*' in '" + text + "'");
            }
        }
    }
    return reduce(spec, letters);
}

bool GroupElement::operator<(const GroupElement& rhs) const {
    int la = length(), lb = rhs.length();
    if (la != lb) return la < lb;
    for (size_t f = 0; f < words_.size(); ++f) {
        const Word& a = words_[f];
        const Word& b = rhs.words_[f];
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == b[i]) continue;
            int aa = std::abs(a[i]), ab = std::abs(b[i]);
            if (aa != ab) return aa < ab;
            return a[i] > 0;  // positive letter sorts before its inverse
        }
    }
    return false;
}

struct GroupElementRawAccess {
    static GroupElement make(std::vector<GroupElement::Word> ws) {
        GroupElement g;
        for (const auto& w : ws) GroupElement::check_reduced(w);
        g.words_ = std::move(ws);
        return g;
    }
};

namespace {

// Freely reduced words of each length 0..radius over F_rank, lex order per length.
std::vector<std::vector<GroupElement::Word>> factor_words(int rank, int radius) {
    std::vector<std::vector<GroupElement::Word>> by_len(radius + 1);
    by_len[0].push_back({});
    for (int len = 1; len <= radius; ++len) {
        for (const auto& w : by_len[len - 1]) {
            for (int l = 1; l <= rank; ++l) {
                for (int s : {+1, -1}) {
                    auto letter = static_cast<std::int16_t>(s * l);
                    if (!w.empty() && w.back() == -letter) continue;
                    auto v = w;
                    v.push_back(letter);
                    by_len[len].push_back(std::move(v));
                }
            }
        }
    }
    return by_len;
}

struct BallBuilder {
    const GroupSpec& spec;
    int radius;
    std::vector<std::vector<std::vector<GroupElement::Word>>> words;  // per factor, per length
    std::vector<GroupElement> out;
    std::vector<GroupElement::Word> current;

    void rec(int factor, int budget) {
        if (factor == spec.factor_count()) {
            out.push_back(GroupElementRawAccess::make(current));
            return;
        }
        for (int len = 0; len <= budget; ++len)
            for (const auto& w : words[factor][len]) {
                current[factor] = w;
                rec(factor + 1, budget - len);
            }
    }
};

}  // namespace

std::vector<GroupElement> ball(const GroupSpec& spec, int radius) {
    if (radius < 0) throw InputError("ball radius must be >= 0");
    BallBuilder b{spec, radius, {}, {}, {}};
    for (int f = 0; f < spec.factor_count(); ++f)
        b.words.push_back(factor_words(spec.factors[f], radius));
    b.current.resize(spec.factor_count());
    b.rec(0, radius);
    std::sort(b.out.begin(), b.out.end());
    return b.out;
}

long long sphere_size(const GroupSpec& spec, int n) {
    if (n < 0) return 0;
    auto all = ball(spec, n);
    long long count = 0;
    for (const auto& g : all)
        if (g.length() == n) ++count;
    return count;
}

}  // namespace qmoore
