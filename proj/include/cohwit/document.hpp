#ifndef COHWIT_DOCUMENT_HPP
#define COHWIT_DOCUMENT_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohwit/operator_core.hpp"

namespace cohwit {

/// Malformed or unreadable input document. Distinct from domain errors.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// On-disk matrix: {"dim": d, "entries": [[re, im], ...] (row-major), "label": "..."}.
struct MatrixDocument {
    std::size_t dim = 0;
    std::vector<std::complex<double>> entries;
    std::optional<std::string> label;

    friend bool operator==(const MatrixDocument&, const MatrixDocument&) = default;
};

MatrixDocument parse_matrix_document(const std::string& text);
MatrixDocument matrix_document_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MatrixDocument& doc);

/// Canonical text form: sorted keys, two-space indent, shortest round-trip
/// floats, trailing newline.
std::string serialize(const MatrixDocument& doc);
std::string serialize(const nlohmann::json& j);

/// Builds the Hermitian matrix; asymmetry beyond `symmetry_tol` is a ParseError.
HermitianMatrix<double> to_hermitian(const MatrixDocument& doc,
                                     double symmetry_tol = Tolerances<double>{}.symmetry);
MatrixDocument to_document(const HermitianMatrix<double>& h, std::optional<std::string> label = {});

MatrixDocument read_matrix_file(const std::string& path);

} // namespace cohwit

#endif // COHWIT_DOCUMENT_HPP
