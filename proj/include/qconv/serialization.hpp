#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qconv/bounds.hpp"
#include "qconv/channel.hpp"
#include "qconv/errors.hpp"
#include "qconv/hermitian.hpp"

namespace qconv {

// Reals are serialized at 17 significant decimal digits, which round-trips
// IEEE doubles exactly.
inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline void write_entries(std::ostream& os, const Matrix& m,
                          const char* indent) {
  os << "[\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << indent << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ", ";
      os << "[" << format_real(m(i, j).real()) << ", "
         << format_real(m(i, j).imag()) << "]";
    }
    os << "]" << (i + 1 < m.rows() ? "," : "") << "\n";
  }
  os << indent << "]";
}

inline Matrix parse_entries(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("entries must be a nonempty array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  try {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& row = j.at(i);
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        throw ParseError("ragged entries array");
      }
      for (Eigen::Index k = 0; k < cols; ++k) {
        const auto& cell = row.at(k);
        if (!cell.is_array() || cell.size() != 2 ||
            !cell.at(0).is_number() || !cell.at(1).is_number()) {
          throw ParseError("each entry must be a [re, im] pair of numbers");
        }
        m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad entries array: ") + e.what());
  }
  return m;
}

inline nlohmann::json parse_document(std::istream& is, const char* what) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid ") + what + ": " + e.what());
  }
  return j;
}

}  // namespace detail

// On-disk operator record: dims is [d] for a plain operator or [dA, dB] for
// a bipartite one; entries are row-major [re, im] pairs.
struct OperatorRecord {
  std::vector<int> dims;
  Matrix entries;
};

inline void save_operator(std::ostream& os, const std::vector<int>& dims,
                          const Matrix& m) {
  os << "{\n  \"dims\": [";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) os << ", ";
    os << dims[i];
  }
  os << "],\n  \"entries\": ";
  detail::write_entries(os, m, "  ");
  os << "\n}\n";
}

inline void save_operator(const std::string& path,
                          const std::vector<int>& dims, const Matrix& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot open " + path + " for writing");
  save_operator(os, dims, m);
}

inline void save_operator(const std::string& path,
                          const BipartiteOperator& op) {
  save_operator(path, {op.dimA(), op.dimB()}, op.matrix());
}

inline OperatorRecord load_operator(std::istream& is) {
  const nlohmann::json j = detail::parse_document(is, "operator file");
  OperatorRecord rec;
  try {
    rec.dims = j.at("dims").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("missing or bad dims: ") + e.what());
  }
  if (rec.dims.empty() || rec.dims.size() > 2) {
    throw ParseError("dims must have one or two elements");
  }
  long total = 1;
  for (int d : rec.dims) {
    if (d < 1) throw ParseError("dims must be positive");
    total *= d;
  }
  if (!j.contains("entries")) throw ParseError("missing entries");
  rec.entries = detail::parse_entries(j.at("entries"));
  if (rec.entries.rows() != total || rec.entries.cols() != total) {
    throw ParseError("entries shape does not match dims");
  }
  return rec;
}

inline OperatorRecord load_operator(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot open " + path);
  return load_operator(is);
}

inline HermitianOperator to_hermitian(const OperatorRecord& rec) {
  return HermitianOperator(rec.entries);
}

inline BipartiteOperator to_bipartite(const OperatorRecord& rec) {
  if (rec.dims.size() != 2) {
    throw ParseError("bipartite operator requires dims = [dA, dB]");
  }
  return BipartiteOperator(rec.dims[0], rec.dims[1],
                           HermitianOperator(rec.entries));
}

// Channel file format: {"dimIn": d, "dimOut": d', "kraus": [matrix, ...]}
// with the same complex-entry encoding as operators.
inline void save_channel(std::ostream& os, const QuantumChannel& ch) {
  os << "{\n  \"dimIn\": " << ch.dimIn() << ",\n  \"dimOut\": " << ch.dimOut()
     << ",\n  \"kraus\": [\n";
  for (std::size_t i = 0; i < ch.kraus().size(); ++i) {
    os << "    ";
    detail::write_entries(os, ch.kraus()[i], "    ");
    os << (i + 1 < ch.kraus().size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
}

inline void save_channel(const std::string& path, const QuantumChannel& ch) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot open " + path + " for writing");
  save_channel(os, ch);
}

inline QuantumChannel load_channel(std::istream& is) {
  const nlohmann::json j = detail::parse_document(is, "channel file");
  int dim_in = 0, dim_out = 0;
  try {
    dim_in = j.at("dimIn").get<int>();
    dim_out = j.at("dimOut").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("missing or bad channel dims: ") + e.what());
  }
  if (!j.contains("kraus") || !j.at("kraus").is_array() ||
      j.at("kraus").empty()) {
    throw ParseError("missing kraus list");
  }
  std::vector<Matrix> kraus;
  for (const auto& k : j.at("kraus")) {
    kraus.push_back(detail::parse_entries(k));
  }
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

inline QuantumChannel load_channel(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot open " + path);
  return load_channel(is);
}

// CSV output of a bound curve: fixed header, 17-significant-digit floats,
// LF line endings.
inline void write_curve_csv(std::ostream& os, const BoundCurve& curve) {
  os << "sweep_var,s_star,exponent,fidelity_bound,method\n";
  for (const CurveRow& row : curve.rows) {
    os << format_real(row.sweep_var) << "," << format_real(row.s_star) << ","
       << format_real(row.exponent) << "," << format_real(row.fidelity_bound)
       << "," << row.method << "\n";
  }
}

inline void write_curve_csv(const std::string& path, const BoundCurve& curve) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot open " + path + " for writing");
  write_curve_csv(os, curve);
}

}  // namespace qconv
