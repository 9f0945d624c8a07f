#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "polariton/error.hpp"
#include "polariton/state.hpp"

namespace polariton {

/// Member names of the state's model, in storage order.
inline std::vector<std::string> field_names(const SimState& s) {
  return std::visit(
      [](const auto& f) {
        using Fields = std::decay_t<decltype(f)>;
        return std::vector<std::string>(Fields::names.begin(), Fields::names.end());
      },
      s.fields);
}

/// One field of a state as complex values (real fields get a zero imaginary part).
inline ComplexField field_values(const SimState& s, std::string_view name) {
  std::optional<ComplexField> found;
  std::visit(
      [&](const auto& fields) {
        using Fields = std::decay_t<decltype(fields)>;
        std::size_t slot = 0;
        for_each_member(
            [&](const auto& f) {
              if (Fields::names[slot++] != name) return;
              ComplexField out(f.grid());
              for (std::size_t k = 0; k < f.size(); ++k) out[k] = complex(f[k]);
              found = std::move(out);
            },
            fields);
      },
      s.fields);
  if (!found) {
    std::string known;
    for (const auto& n : field_names(s)) known += (known.empty() ? "" : ", ") + n;
    throw Error("no field '" + std::string(name) + "' in " + std::string(to_string(s.tag())) +
                " snapshot (fields: " + known + ")");
  }
  return std::move(*found);
}

/// CSV with one row per node: x,re,im in 1D and x,y,re,im in 2D, rows in
/// storage order. An empty name selects the first field.
inline void write_csv(std::ostream& os, const SimState& s, std::string_view name = {}) {
  const std::string chosen = name.empty() ? field_names(s).front() : std::string(name);
  const ComplexField f = field_values(s, chosen);
  const Grid& g = f.grid();
  char buf[128];
  os << (g.ndim == 2 ? "x,y,re,im\n" : "x,re,im\n");
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const complex v = f.at(i, j);
      if (g.ndim == 2) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", g.x(i), g.y(j), v.real(),
                      v.imag());
      } else {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x(i), v.real(), v.imag());
      }
      os << buf;
    }
  }
}

}  // namespace polariton
