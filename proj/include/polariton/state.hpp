#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <variant>

#include "polariton/error.hpp"
#include "polariton/grid.hpp"

namespace polariton {

enum class ModelTag : std::uint32_t { cnrp1 = 0, cnrp1_spin = 1, cnrp2 = 2, hinrp = 3 };

inline std::string_view to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::cnrp1: return "cnrp1";
    case ModelTag::cnrp1_spin: return "cnrp1_spin";
    case ModelTag::cnrp2: return "cnrp2";
    case ModelTag::hinrp: return "hinrp";
  }
  return "unknown";
}

inline ModelTag model_tag_from_string(std::string_view name) {
  if (name == "cnrp1") return ModelTag::cnrp1;
  if (name == "cnrp1_spin") return ModelTag::cnrp1_spin;
  if (name == "cnrp2") return ModelTag::cnrp2;
  if (name == "hinrp") return ModelTag::hinrp;
  throw ModelError("unknown model '" + std::string(name) +
                   "' (expected cnrp1, cnrp1_spin, cnrp2 or hinrp)");
}

// Each field collection exposes its members through members() in a fixed
// order; that order is also the on-disk order of snapshot fields.

/// Photon and exciton amplitudes, spinless.
struct Cnrp1Fields {
  static constexpr ModelTag tag = ModelTag::cnrp1;
  static constexpr std::array<std::string_view, 2> names{"psi_c", "psi_x"};

  ComplexField psi_c;
  ComplexField psi_x;

  auto members() { return std::tie(psi_c, psi_x); }
  auto members() const { return std::tie(psi_c, psi_x); }
  friend bool operator==(const Cnrp1Fields&, const Cnrp1Fields&) = default;
};

/// Photon and exciton amplitudes for both circular polarisations.
struct Cnrp1SpinFields {
  static constexpr ModelTag tag = ModelTag::cnrp1_spin;
  static constexpr std::array<std::string_view, 4> names{"psi_c_plus", "psi_c_minus",
                                                         "psi_x_plus", "psi_x_minus"};

  ComplexField psi_c_plus;
  ComplexField psi_c_minus;
  ComplexField psi_x_plus;
  ComplexField psi_x_minus;

  auto members() { return std::tie(psi_c_plus, psi_c_minus, psi_x_plus, psi_x_minus); }
  auto members() const {
    return std::tie(psi_c_plus, psi_c_minus, psi_x_plus, psi_x_minus);
  }
  friend bool operator==(const Cnrp1SpinFields&, const Cnrp1SpinFields&) = default;
};

/// Lower-polariton condensate.
struct Cnrp2Fields {
  static constexpr ModelTag tag = ModelTag::cnrp2;
  static constexpr std::array<std::string_view, 1> names{"psi"};

  ComplexField psi;

  auto members() { return std::tie(psi); }
  auto members() const { return std::tie(psi); }
  friend bool operator==(const Cnrp2Fields&, const Cnrp2Fields&) = default;
};

/// Condensate plus incoherent reservoir density.
struct HinrpFields {
  static constexpr ModelTag tag = ModelTag::hinrp;
  static constexpr std::array<std::string_view, 2> names{"psi", "n_R"};

  ComplexField psi;
  RealField n_R;

  auto members() { return std::tie(psi, n_R); }
  auto members() const { return std::tie(psi, n_R); }
  friend bool operator==(const HinrpFields&, const HinrpFields&) = default;
};

using FieldSet = std::variant<Cnrp1Fields, Cnrp1SpinFields, Cnrp2Fields, HinrpFields>;

template <class Fields>
concept FieldCollection = requires(Fields f) {
  { Fields::tag } -> std::convertible_to<ModelTag>;
  Fields::names;
  f.members();
};

namespace detail {

template <std::size_t I, class Fn, class Tuples, std::size_t... T>
void apply_member(Fn& fn, Tuples& tuples, std::index_sequence<T...>) {
  fn(std::get<I>(std::get<T>(tuples))...);
}

template <class Fn, class Tuples, std::size_t... I>
void apply_members(Fn& fn, Tuples& tuples, std::index_sequence<I...>) {
  constexpr auto collections = std::make_index_sequence<std::tuple_size_v<Tuples>>{};
  (apply_member<I>(fn, tuples, collections), ...);
}

}  // namespace detail

/// Apply `fn(a_member, b_member...)` to corresponding members of several
/// collections of the same type.
template <class Fn, class First, class... Rest>
void for_each_member(Fn&& fn, First&& first, Rest&&... rest) {
  auto tuples = std::make_tuple(first.members(), rest.members()...);
  constexpr std::size_t n = std::tuple_size_v<std::decay_t<decltype(first.members())>>;
  detail::apply_members(fn, tuples, std::make_index_sequence<n>{});
}

/// Zero-valued collection of the given type on `grid`.
template <FieldCollection Fields>
Fields zero_fields(const Grid& grid) {
  Fields out;
  for_each_member([&](auto& f) { f = std::decay_t<decltype(f)>(grid); }, out);
  return out;
}

template <FieldCollection Fields>
bool all_finite(const Fields& fields) {
  bool ok = true;
  for_each_member([&](const auto& f) { ok = ok && f.all_finite(); }, fields);
  return ok;
}

/// Complete dynamical state of one run at time t (ps).
struct SimState {
  FieldSet fields;
  double t = 0.0;

  [[nodiscard]] ModelTag tag() const {
    return std::visit([](const auto& f) { return std::decay_t<decltype(f)>::tag; }, fields);
  }

  [[nodiscard]] const Grid& grid() const {
    return std::visit(
        [](const auto& f) -> const Grid& { return std::get<0>(f.members()).grid(); }, fields);
  }

  template <FieldCollection Fields>
  [[nodiscard]] const Fields& as() const& {
    if (const auto* p = std::get_if<Fields>(&fields)) return *p;
    throw ModelError("state holds " + std::string(to_string(tag())) + " fields, expected " +
                     std::string(to_string(Fields::tag)));
  }

  template <FieldCollection Fields>
  [[nodiscard]] Fields& as() & {
    if (auto* p = std::get_if<Fields>(&fields)) return *p;
    throw ModelError("state holds " + std::string(to_string(tag())) + " fields, expected " +
                     std::string(to_string(Fields::tag)));
  }

  /// Moves the fields out of a temporary, so no reference outlives it.
  template <FieldCollection Fields>
  [[nodiscard]] Fields as() && {
    return std::move(as<Fields>());
  }

  friend bool operator==(const SimState&, const SimState&) = default;
};

}  // namespace polariton
