#include "toolkit/exact/json.hpp"

namespace toolkit {

using nlohmann::json;

json to_json(const BigInt& x) { return x.get_str(); }

json to_json(const BigRat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

json to_json(const QPoly& p) {
    json arr = json::array();
    for (const BigRat& c : p.c) arr.push_back(to_json(c));
    return arr;
}

json to_json(const QMat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const ZMat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt((long)j.get<int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw domain_error("BadInput", "expected integer as number or decimal string");
}

BigRat bigrat_from_json(const json& j) {
    if (j.is_number_integer()) return BigRat((long)j.get<int64_t>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw domain_error("BadInput", "expected rational as number or \"p/q\" string");
}

QPoly qpoly_from_json(const json& j) {
    if (!j.is_array()) throw domain_error("BadInput", "expected polynomial as coefficient array");
    std::vector<BigRat> c;
    for (const auto& e : j) c.push_back(bigrat_from_json(e));
    return QPoly(std::move(c));
}

QMat qmat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw domain_error("BadInput", "expected matrix as array of rows");
    size_t rows = j.size(), cols = j[0].size();
    QMat m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw domain_error("BadInput", "ragged matrix rows");
        for (size_t jj = 0; jj < cols; ++jj) m(i, jj) = bigrat_from_json(j[i][jj]);
    }
    return m;
}

ZMat zmat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw domain_error("BadInput", "expected matrix as array of rows");
    size_t rows = j.size(), cols = j[0].size();
    ZMat m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw domain_error("BadInput", "ragged matrix rows");
        for (size_t jj = 0; jj < cols; ++jj) m(i, jj) = bigint_from_json(j[i][jj]);
    }
    return m;
}

} // namespace toolkit
