#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace brst {

/// (form degree, ghost number). Shifts of derivations may be negative, so
/// the components are signed; generators and homogeneous elements never are.
struct Bidegree {
  int form = 0;
  int ghost = 0;

  constexpr int total() const { return form + ghost; }
  constexpr bool odd() const { return (total() & 1) != 0; }

  friend constexpr Bidegree operator+(Bidegree a, Bidegree b) {
    return {a.form + b.form, a.ghost + b.ghost};
  }
  friend constexpr auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

std::string to_string(Bidegree b);

/// Ordering of kinds is part of the canonical term order.
enum class GenKind : std::uint8_t {
  Differential = 0,  // dx^mu
  Field = 1,         // even 0-form component functions
  Inverse = 2,       // components of X^{-1} for a declared field matrix X
  Ghost = 3,         // gauge ghost components
  DiffeoGhost = 4,   // xi^mu
};

const char* to_string(GenKind k);

struct GeneratorKey {
  GenKind kind = GenKind::Field;
  std::string name;
  std::vector<int> indices;
  std::vector<int> jet;  // sorted coordinate-derivative multiset

  friend auto operator<=>(const GeneratorKey&, const GeneratorKey&) = default;
};

struct Generator {
  GeneratorKey key;
  Bidegree bidegree;

  bool odd() const { return bidegree.odd(); }
  int jet_order() const { return static_cast<int>(key.jet.size()); }
};

using GenId = std::uint32_t;

class JetOverflow : public std::runtime_error {
 public:
  explicit JetOverflow(const std::string& generator)
      : std::runtime_error("jet order overflow at generator " + generator),
        generator_(generator) {}
  const std::string& generator() const { return generator_; }

 private:
  std::string generator_;
};

/// Process-wide append-only intern table. Ids are stable for the lifetime of
/// the process; the canonical (printing) order is by key, never by id.
GenId intern(const Generator& g);
const Generator& generator(GenId id);
std::string render(GenId id);
bool key_less(GenId a, GenId b);

/// Global jet truncation order (default 4). Producing a jet beyond it throws.
int jet_truncation();
void set_jet_truncation(int order);

// Constructors for the usual generator families.
GenId dx(int mu);
GenId field(const std::string& name, std::vector<int> indices,
            std::vector<int> jet = {});
GenId ghost(const std::string& name, std::vector<int> indices,
            std::vector<int> jet = {});
GenId xi(int mu, std::vector<int> jet = {});
GenId inverse_component(const std::string& name, std::vector<int> indices);

/// Same generator with one more coordinate derivative; throws JetOverflow.
GenId prolong(GenId id, int mu);

}  // namespace brst
