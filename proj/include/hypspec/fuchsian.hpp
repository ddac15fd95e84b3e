#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypspec/mobius.hpp"

namespace hypspec {

/// Signed generator label: index in [0, rank), positive orientation when
/// sign > 0. Text form: lowercase letter for a generator, uppercase for its
/// inverse ("abA" = a * b * a^-1).
struct Letter {
    int index = 0;
    int sign = +1;
    Letter inverse() const { return {index, -sign}; }
    bool operator==(const Letter& o) const = default;
};

/// Cyclically reduced word of signed generator labels; a free homotopy class.
struct ConjugacyClass {
    std::vector<Letter> word;

    bool empty() const { return word.empty(); }
    std::size_t length() const { return word.size(); }
    ConjugacyClass inverse_class() const;
    bool cyclically_reduced() const;
};

std::string word_to_string(const std::vector<Letter>& w);
std::vector<Letter> parse_word(const std::string& s, int rank);

/// Cocompact Fuchsian group given by explicit generators. Conjugacy classes
/// (free homotopy classes) are cyclically reduced words in the labels.
class FuchsianGroup {
  public:
    FuchsianGroup(std::vector<GroupElement> generators, std::vector<std::string> labels,
                  std::string relator = "", Vec2 dirichlet_center = {0.0, 1.0});

    int rank() const { return static_cast<int>(gens_.size()); }
    const GroupElement& generator(int i) const { return gens_[i]; }
    const std::string& label(int i) const { return labels_[i]; }
    const Vec2& dirichlet_center() const { return center_; }
    const std::string& relator() const { return relator_; }

    GroupElement element(const Letter& l) const {
        return l.sign > 0 ? gens_[l.index] : gens_[l.index].inverse();
    }

    GroupElement evaluate_word(const std::vector<Letter>& w) const;
    GroupElement evaluate_word(const ConjugacyClass& c) const { return evaluate_word(c.word); }
    GroupElement evaluate_word(const std::string& s) const {
        return evaluate_word(parse_word(s, rank()));
    }

    /// All free homotopy classes with word length <= max_word_length, one per
    /// cyclic equivalence class, sorted by (length, lexicographic). Oriented:
    /// inverse classes are separate entries.
    std::vector<ConjugacyClass> enumerate_classes(int max_word_length) const;

    /// Greedy Dirichlet reduction: returns (reduced point, element g) with
    /// g(input) = output and output at minimal distance to the center among
    /// generator moves. Throws NumericalError after 10^4 steps.
    std::pair<Vec2, GroupElement> reduce_to_domain(const Vec2& p) const;

    /// True when no single generator move brings p strictly closer to the
    /// Dirichlet center (tolerance for wall ties).
    bool in_domain(const Vec2& p, double tol = 1e-12) const;

    /// Seed tangent on the axis of the evaluated word, oriented toward the
    /// attracting fixed point.
    UnitTangent axis_seed(const ConjugacyClass& c) const;

    /// Generators and inverses, the move set for reduction.
    const std::vector<GroupElement>& side_pairings() const { return side_pairings_; }

  private:
    std::vector<GroupElement> gens_;
    std::vector<std::string> labels_;
    std::string relator_;
    Vec2 center_;
    std::vector<GroupElement> side_pairings_;
};

/// Genus-2 surface group of the regular hyperbolic octagon: four hyperbolic
/// translations through the Dirichlet center at i, each the pi/4 tangent
/// rotation of the previous. The relator is validated at construction.
FuchsianGroup make_genus2_octagon_group();

/// Relator word satisfied by the octagon generators (evaluates to -Id).
extern const char* kOctagonRelator;

}  // namespace hypspec
