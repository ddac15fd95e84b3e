#include "hypspec/fuchsian.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace hypspec {

ConjugacyClass ConjugacyClass::inverse_class() const {
    ConjugacyClass r;
    r.word.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) r.word.push_back(it->inverse());
    return r;
}

bool ConjugacyClass::cyclically_reduced() const {
    if (word.empty()) return false;
    const std::size_t n = word.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Letter& cur = word[i];
        const Letter& nxt = word[(i + 1) % n];
        if (n > 1 && nxt == cur.inverse()) return false;
    }
    return true;
}

std::string word_to_string(const std::vector<Letter>& w) {
    std::string s;
    for (const Letter& l : w) {
        char c = static_cast<char>('a' + l.index);
        s += (l.sign > 0) ? c : static_cast<char>(std::toupper(c));
    }
    return s;
}

std::vector<Letter> parse_word(const std::string& s, int rank) {
    std::vector<Letter> w;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == ' ') continue;
        int sign = +1;
        int idx;
        if (std::islower(static_cast<unsigned char>(c))) {
            idx = c - 'a';
        } else if (std::isupper(static_cast<unsigned char>(c))) {
            idx = c - 'A';
            sign = -1;
        } else {
            throw ConfigError(std::string("parse_word: bad character '") + c + "' in \"" + s + "\"");
        }
        // optional trailing apostrophe also marks an inverse
        if (i + 1 < s.size() && s[i + 1] == '\'') {
            sign = -sign;
            ++i;
        }
        if (idx < 0 || idx >= rank)
            throw ConfigError(std::string("parse_word: unknown generator label '") + c + "'");
        w.push_back({idx, sign});
    }
    return w;
}

FuchsianGroup::FuchsianGroup(std::vector<GroupElement> generators, std::vector<std::string> labels,
                             std::string relator, Vec2 dirichlet_center)
    : gens_(std::move(generators)),
      labels_(std::move(labels)),
      relator_(std::move(relator)),
      center_(dirichlet_center) {
    if (gens_.empty()) throw ConfigError("FuchsianGroup: no generators");
    if (labels_.size() != gens_.size())
        throw ConfigError("FuchsianGroup: label/generator count mismatch");
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (std::abs(gens_[i].det() - 1.0) > kDetTol)
            throw ConfigError("FuchsianGroup: generator '" + labels_[i] + "' has det " +
                              std::to_string(gens_[i].det()));
        if (!gens_[i].is_hyperbolic())
            throw ConfigError("FuchsianGroup: generator '" + labels_[i] + "' is not hyperbolic");
    }
    if (!relator_.empty()) {
        const GroupElement r = evaluate_word(relator_);
        if (!r.near_identity(1e-9))
            throw ConfigError("FuchsianGroup: relator \"" + relator_ +
                              "\" does not evaluate to +-identity");
    }
    side_pairings_.reserve(2 * gens_.size());
    for (const auto& g : gens_) side_pairings_.push_back(g);
    for (const auto& g : gens_) side_pairings_.push_back(g.inverse());
}

GroupElement FuchsianGroup::evaluate_word(const std::vector<Letter>& w) const {
    GroupElement m = GroupElement::identity();
    for (const Letter& l : w) {
        if (l.index < 0 || l.index >= rank())
            throw ConfigError("evaluate_word: label index out of range");
        m = m * element(l);
    }
    return m;
}

namespace {

// lexicographic key: a < b < ... < A < B < ...
int letter_key(const Letter& l) { return (l.sign > 0 ? 0 : 1000) + l.index; }

std::vector<Letter> canonical_rotation(const std::vector<Letter>& w) {
    const std::size_t n = w.size();
    std::vector<Letter> best = w;
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<Letter> rot(w.begin() + r, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + r);
        const bool less = std::lexicographical_compare(
            rot.begin(), rot.end(), best.begin(), best.end(),
            [](const Letter& a, const Letter& b) { return letter_key(a) < letter_key(b); });
        if (less) best = rot;
    }
    return best;
}

}  // namespace

std::vector<ConjugacyClass> FuchsianGroup::enumerate_classes(int max_word_length) const {
    if (max_word_length < 1) throw ConfigError("enumerate_classes: max_word_length must be >= 1");
    std::vector<ConjugacyClass> out;
    std::set<std::vector<int>> seen;

    std::vector<Letter> alphabet;
    for (int i = 0; i < rank(); ++i) alphabet.push_back({i, +1});
    for (int i = 0; i < rank(); ++i) alphabet.push_back({i, -1});

    std::vector<Letter> w;
    auto emit = [&](const std::vector<Letter>& word) {
        std::vector<Letter> canon = canonical_rotation(word);
        std::vector<int> key;
        key.reserve(canon.size());
        for (const Letter& l : canon) key.push_back(letter_key(l));
        if (seen.insert(key).second) out.push_back(ConjugacyClass{canon});
    };
    std::function<void(int)> rec = [&](int len) {
        if (!w.empty()) {
            // cyclic reduction constraint: last letter must not cancel first
            if (w.size() == 1 || !(w.back() == w.front().inverse())) emit(w);
        }
        if (len == max_word_length) return;
        for (const Letter& l : alphabet) {
            if (!w.empty() && l == w.back().inverse()) continue;
            w.push_back(l);
            rec(len + 1);
            w.pop_back();
        }
    };
    rec(0);

    std::sort(out.begin(), out.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return std::lexicographical_compare(
            a.word.begin(), a.word.end(), b.word.begin(), b.word.end(),
            [](const Letter& x, const Letter& y) { return letter_key(x) < letter_key(y); });
    });
    return out;
}

std::pair<Vec2, GroupElement> FuchsianGroup::reduce_to_domain(const Vec2& p) const {
    if (p.y <= 0.0) throw ConfigError("reduce_to_domain: point not in upper half-plane");
    Vec2 cur = p;
    GroupElement acc = GroupElement::identity();
    double best = cosh_dist(cur, center_);
    for (int step = 0; step < 10000; ++step) {
        int move = -1;
        double move_dist = best * (1.0 - 1e-15);
        for (std::size_t i = 0; i < side_pairings_.size(); ++i) {
            const Vec2 q = side_pairings_[i].apply(cur);
            const double d = cosh_dist(q, center_);
            if (d < move_dist) {
                move_dist = d;
                move = static_cast<int>(i);
            }
        }
        if (move < 0) return {cur, acc};
        cur = side_pairings_[move].apply(cur);
        acc = (side_pairings_[move] * acc).renormalized();
        best = move_dist;
    }
    throw NumericalError("reduce_to_domain: no convergence after 10^4 steps");
}

bool FuchsianGroup::in_domain(const Vec2& p, double tol) const {
    const double d0 = cosh_dist(p, center_);
    for (const auto& g : side_pairings_) {
        if (cosh_dist(g.apply(p), center_) < d0 - tol) return false;
    }
    return true;
}

UnitTangent FuchsianGroup::axis_seed(const ConjugacyClass& c) const {
    if (c.empty()) throw ConfigError("axis_seed: empty class");
    const GroupElement m = evaluate_word(c);
    return axis_of(m).seed;
}

const char* kOctagonRelator = "aBcDAbCd";

namespace {

GroupElement rotation_about_i(double alpha) {
    // tangent rotation by 2*alpha at i
    return GroupElement(std::cos(alpha), std::sin(alpha), -std::sin(alpha), std::cos(alpha));
}

}  // namespace

FuchsianGroup make_genus2_octagon_group() {
    // Side pairings of the regular octagon with vertex angle pi/4: hyperbolic
    // translations of length 2*acosh(1+sqrt(2)) whose axes pass through i at
    // angles k*pi/4.
    const double s2 = std::sqrt(2.0);
    const double lam = 1.0 + s2 + std::sqrt(2.0 + 2.0 * s2);
    GroupElement g0(lam, 0.0, 0.0, 1.0 / lam);
    std::vector<GroupElement> gens;
    for (int k = 0; k < 4; ++k) {
        const GroupElement r = rotation_about_i(k * M_PI / 8.0);
        gens.push_back(r * g0 * r.inverse());
    }
    return FuchsianGroup(std::move(gens), {"a", "b", "c", "d"}, kOctagonRelator, {0.0, 1.0});
}

}  // namespace hypspec
