#pragma once

#include <optional>
#include <string>

#include "pdmodel/cdga.hpp"
#include "pdmodel/duality.hpp"

namespace pdmodel {

/// An algebra file: the stored algebra (degrees above the last basis entry are zero),
/// its formal dimension and an optional orientation on degree n.
struct AlgebraDocument {
  CdgaPtr algebra;
  int n = 0;
  std::optional<Orientation> orientation;
};

/// Parses the JSON algebra format. When `field` is given it replaces the file's field and every
/// scalar is read in it. Throws ParseError naming the offending field.
AlgebraDocument parse_algebra(const std::string& text, const std::optional<Field>& field = std::nullopt);
AlgebraDocument read_algebra_file(const std::string& path, const std::optional<Field>& field = std::nullopt);

/// Canonical rendering: entries sorted, scalars as strings, unit products omitted.
std::string print_algebra(const AlgebraDocument& doc);

/// "Q", or a prime such as "2" or "F_2". Throws ParseError otherwise.
Field parse_field(const std::string& text);

}  // namespace pdmodel
