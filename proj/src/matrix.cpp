#include "deltamod/matrix.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace deltamod {

Rat makeRat(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    a_.assign(static_cast<size_t>(rows) * cols, Int(0));
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::fromColumns(int dim, const std::vector<IntVec>& cols) {
    IntMatrix m(dim, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != dim)
            throw std::invalid_argument("column length mismatch");
        for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
    }
    return m;
}

IntMatrix IntMatrix::fromRows(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) throw std::invalid_argument("fromRows: no rows");
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::invalid_argument("fromRows: ragged rows");
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = static_cast<long>(rows[i][j]);
    }
    return m;
}

IntVec IntMatrix::column(int j) const {
    IntVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<IntVec> IntMatrix::columnList() const {
    std::vector<IntVec> cols(cols_);
    for (int j = 0; j < cols_; ++j) cols[j] = column(j);
    return cols;
}

IntMatrix IntMatrix::selectColumns(const std::vector<int>& idx) const {
    IntMatrix m(rows_, static_cast<int>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] < 0 || idx[j] >= cols_) throw std::invalid_argument("column index out of range");
        for (int i = 0; i < rows_; ++i) m.at(i, static_cast<int>(j)) = at(i, idx[j]);
    }
    return m;
}

void IntMatrix::appendColumn(const IntVec& v) {
    if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("column length mismatch");
    IntMatrix next(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) next.at(i, j) = at(i, j);
        next.at(i, cols_) = v[i];
    }
    *this = std::move(next);
}

bool IntMatrix::isZero() const {
    for (const Int& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

Int IntMatrix::maxAbsEntry() const {
    Int best = 0;
    for (const Int& x : a_) {
        Int v = abs(x);
        if (v > best) best = v;
    }
    return best;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (sgn(aik) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

IntVec operator*(const IntMatrix& a, const IntVec& v) {
    if (a.cols() != static_cast<int>(v.size()))
        throw std::invalid_argument("matrix-vector dimension mismatch");
    IntVec r(a.rows(), Int(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

void ElementaryOp::applyTo(IntMatrix& m) const {
    switch (kind) {
        case Kind::Swap:
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
            break;
        case Kind::Negate:
            for (int c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
            break;
        case Kind::AddMultiple:
            if (i == j) throw std::invalid_argument("addMultiple with i == j is not unimodular");
            for (int c = 0; c < m.cols(); ++c) m.at(i, c) += factor * m.at(j, c);
            break;
    }
}

ElementaryOp ElementaryOp::inverse() const {
    switch (kind) {
        case Kind::Swap:
        case Kind::Negate:
            return *this;
        case Kind::AddMultiple:
            return addMultiple(i, j, -factor);
    }
    throw std::logic_error("unreachable");
}

namespace {

IntMatrix parseMatrixJson(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    const int rows = doc.at("rows").get<int>();
    const int cols = doc.at("cols").get<int>();
    if (rows < 1 || cols < 0) throw std::invalid_argument("matrix JSON: bad dimensions");
    IntMatrix m(rows, cols);
    const auto& data = doc.at("data");
    if (static_cast<int>(data.size()) != rows) throw std::invalid_argument("matrix JSON: row count mismatch");
    for (int i = 0; i < rows; ++i) {
        const auto& row = data[i];
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("matrix JSON: column count mismatch");
        for (int j = 0; j < cols; ++j) {
            if (row[j].is_number_integer())
                m.at(i, j) = Int(row[j].get<long>());
            else
                m.at(i, j) = Int(row[j].get<std::string>());
        }
    }
    return m;
}

}  // namespace

IntMatrix parseMatrixString(const std::string& text) {
    size_t pos = text.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) throw std::invalid_argument("empty matrix input");
    if (text[pos] == '{') return parseMatrixJson(text);
    std::istringstream in(text);
    long rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw std::invalid_argument("matrix text: missing header");
    if (rows < 1 || cols < 0) throw std::invalid_argument("matrix text: bad dimensions");
    IntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    std::string tok;
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            if (!(in >> tok)) throw std::invalid_argument("matrix text: truncated data");
            try {
                m.at(static_cast<int>(i), static_cast<int>(j)) = Int(tok);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("matrix text: bad integer '" + tok + "'");
            }
        }
    return m;
}

IntMatrix parseMatrix(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseMatrixString(buf.str());
}

IntMatrix readMatrixFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return parseMatrix(in);
}

std::string formatMatrixText(const IntMatrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m.at(i, j).get_str();
        }
        out << '\n';
    }
    return out.str();
}

std::string formatMatrixJson(const IntMatrix& m) {
    nlohmann::ordered_json doc;
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    nlohmann::ordered_json data = nlohmann::ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) {
            const Int& x = m.at(i, j);
            if (x.fits_slong_p())
                row.push_back(x.get_si());
            else
                row.push_back(x.get_str());
        }
        data.push_back(std::move(row));
    }
    doc["data"] = std::move(data);
    return doc.dump();
}

void writeMatrixFile(const std::string& path, const IntMatrix& m, bool json) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << (json ? formatMatrixJson(m) : formatMatrixText(m));
}

}  // namespace deltamod
