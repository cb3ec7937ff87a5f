// Finite hearts as combinatorial data: simple classes, ext-quiver, provenance.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "mstab/anquiver.hpp"
#include "mstab/klattice.hpp"

namespace mstab {

struct Simple {
  int label;
  KClass cls;
  bool operator==(const Simple&) const = default;
};

// Signed labels: +s is a forward tilt at s, -s a backward tilt. The shift is
// applied after the word.
struct Provenance {
  std::vector<int> word;
  long shift = 0;
  bool operator==(const Provenance&) const = default;
};

class Heart {
 public:
  Heart() = default;
  // Checks that the classes form a Z-basis, that the ext-quiver lives on the
  // labels, and that no vertex has more than two incoming or outgoing arrows.
  Heart(std::vector<Simple> simples, Quiver extquiver, Provenance provenance = {});

  const std::vector<Simple>& simples() const { return simples_; }
  const Quiver& extquiver() const { return extquiver_; }
  const Provenance& provenance() const { return provenance_; }
  int rank() const { return static_cast<int>(simples_.size()); }
  std::vector<int> labels() const;
  bool has_label(int l) const;
  const KClass& class_of(int label) const;
  int ext1(int from, int to) const { return extquiver_.arrows_between(from, to); }

  // Restriction to a label subset (simples and ext-quiver), provenance dropped.
  Heart restricted(const std::vector<int>& labels) const;

  // Coordinates of gamma in the basis of this heart's simples (label order).
  std::vector<long long> coordinates(const KClass& gamma) const;

 private:
  std::vector<Simple> simples_;
  Quiver extquiver_;
  Provenance provenance_;
  friend Heart forward_tilt(const Heart&, int);
  friend Heart backward_tilt(const Heart&, int);
  friend Heart shift(const Heart&, long);
};

Heart standard_heart(int n);
Heart forward_tilt(const Heart& h, int s);
Heart backward_tilt(const Heart& h, int s);
Heart apply_tilt_word(const Heart& h, const std::vector<int>& signed_labels);
Heart shift(const Heart& h, long k);

// Composite of simple forward tilts at the simples with the listed classes.
Heart tilt_torsion_free(const Heart& h, const std::vector<KClass>& gens);

// Chain S_1, S_2, ... inside v attached to s0 (forward orientation), or the
// dual chain with all ext directions reversed.
std::vector<int> convenient_chain(const Heart& h, const std::vector<int>& v, int s0, bool forward);

struct ConvenientResult {
  Heart heart;
  std::vector<int> word;            // labels tilted at, in order
  std::vector<KClass> generators;   // classes of the simples tilted at
};

// Forward version: afterwards no simple T in v has ext^1(T, s0) != 0.
// With forward = false the dual statement: backward tilts until no T in v has
// ext^1(s0, T) != 0.
ConvenientResult convenient_representative(const Heart& h, const std::vector<int>& v, int s0,
                                           bool forward = true);

struct CanonicalForm {
  std::vector<KClass> classes;
  std::vector<Arrow> arrows;  // on positions in the sorted class list
  std::vector<Cycle> cycles;
  auto operator<=>(const CanonicalForm&) const = default;
  std::string str() const;
};
CanonicalForm canonical_form(const Heart& h);
bool heart_equal(const Heart& a, const Heart& b);

// Every simple class of h is a nonnegative or a nonpositive combination of
// base's simples.
bool sign_coherent(const Heart& h, const Heart& base);

struct ExchangeGraph {
  std::vector<Heart> vertices;
  struct Edge {
    int from, to, label;
  };
  std::vector<Edge> edges;
  std::string to_dot() const;
};

// Breadth-first closure under forward tilts up to the radius. Edges leaving
// the last layer are included when their target was already discovered.
ExchangeGraph exchange_graph(const Heart& h0, int radius);

// Hearts in the interval [h0, h0[1]]: closure of h0 under forward tilts at
// simples whose class lies in h0.
std::vector<Heart> intermediate_hearts(const Heart& h0);

}  // namespace mstab
