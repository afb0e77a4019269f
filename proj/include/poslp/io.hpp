#pragma once

#include <string>

#include "poslp/lft.hpp"
#include "poslp/polysys.hpp"
#include "poslp/synthesis.hpp"
#include "poslp/sysmodel.hpp"

namespace poslp {

/// Structured input documents (JSON). Matrices are arrays of rows. A "kind"
/// field of "system", "polynomial" or "lft" selects the reader; documents
/// without it are plain systems.
enum class DocumentKind { kSystem, kPolynomial, kLft };

DocumentKind document_kind(const std::string& text);

/// {"n","m","p","q","A","B","C","D","E","F"}; B and D may be omitted.
PositiveLtiSystem parse_system(const std::string& text);
std::string format_system(const PositiveLtiSystem& sys);

/// Optional "zero_pattern" ([[row, col], ...]) and "K_lower"/"K_upper"
/// entries of any document. The gain is m x n.
ControllerSpec parse_controller_spec(const std::string& text, std::size_t m, std::size_t n);
std::string format_controller_spec(const ControllerSpec& spec);

/// {"kind": "polynomial", "n","m","p","q","num_params", optional "domain":
/// {"lower","upper"}, "terms": [{"exponents", "A", ...}]}; matrices missing
/// from a term are zero.
PolySystem parse_poly_system(const std::string& text);
std::string format_poly_system(const PolySystem& sys);

/// {"kind": "lft", the nine blocks, "num_params", optional "domain",
/// "delta": [{"exponents", "matrix"}]}.
LftSystem parse_lft(const std::string& text);
std::string format_lft(const LftSystem& lft);

/// Throws ValidationError when the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace poslp
