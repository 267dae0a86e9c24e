#include "cohwit/document.hpp"

#include <fstream>
#include <sstream>

namespace cohwit {

using nlohmann::json;

MatrixDocument matrix_document_from_json(const json& j)
{
    if (!j.is_object())
        throw ParseError("matrix document must be a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned())
        throw ParseError("matrix document needs a nonnegative integer 'dim'");
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ParseError("matrix document needs an 'entries' array");

    MatrixDocument doc;
    doc.dim = j["dim"].get<std::size_t>();
    if (doc.dim == 0)
        throw ParseError("'dim' must be positive");
    const auto& entries = j["entries"];
    if (entries.size() != doc.dim * doc.dim)
        throw ParseError("'entries' must hold dim^2 = " + std::to_string(doc.dim * doc.dim) +
                         " pairs, found " + std::to_string(entries.size()));
    doc.entries.reserve(entries.size());
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ParseError("every entry must be a [re, im] pair of numbers");
        doc.entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    if (j.contains("label")) {
        if (!j["label"].is_string())
            throw ParseError("'label' must be a string");
        doc.label = j["label"].get<std::string>();
    }
    for (const auto& [key, value] : j.items())
        if (key != "dim" && key != "entries" && key != "label")
            throw ParseError("unknown key '" + key + "' in matrix document");
    return doc;
}

MatrixDocument parse_matrix_document(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return matrix_document_from_json(j);
}

json to_json(const MatrixDocument& doc)
{
    json entries = json::array();
    for (const auto& z : doc.entries)
        entries.push_back(json::array({z.real(), z.imag()}));
    json j = {{"dim", doc.dim}, {"entries", std::move(entries)}};
    if (doc.label)
        j["label"] = *doc.label;
    return j;
}

std::string serialize(const json& j)
{
    return j.dump(2) + "\n";
}

std::string serialize(const MatrixDocument& doc)
{
    return serialize(to_json(doc));
}

HermitianMatrix<double> to_hermitian(const MatrixDocument& doc, double symmetry_tol)
{
    const auto n = static_cast<Eigen::Index>(doc.dim);
    ComplexMatrix<double> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            m(i, k) = doc.entries[static_cast<std::size_t>(i * n + k)];
    try {
        return HermitianMatrix<double>(m, symmetry_tol);
    } catch (const Error& e) {
        throw ParseError(std::string("matrix document is not Hermitian: ") + e.what());
    }
}

MatrixDocument to_document(const HermitianMatrix<double>& h, std::optional<std::string> label)
{
    MatrixDocument doc;
    doc.dim = static_cast<std::size_t>(h.dim());
    doc.entries.reserve(doc.dim * doc.dim);
    for (Eigen::Index i = 0; i < h.dim(); ++i)
        for (Eigen::Index k = 0; k < h.dim(); ++k)
            doc.entries.push_back(h(i, k));
    doc.label = std::move(label);
    return doc;
}

MatrixDocument read_matrix_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_document(buf.str());
}

} // namespace cohwit
