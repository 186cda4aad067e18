#include "output.hpp"

#include "nullmodel/errors.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>

namespace nullmodel::cli {

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_band_csv(std::ostream& out, const std::vector<AnndRow>& rows) {
  out << "k,count,eps,value\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.count << ',' << format_number(r.eps) << ',' << format_number(r.value) << '\n';
  }
}

void write_clustering_csv(std::ostream& out, const ClusteringCurve& curve) {
  out << "k,count,eps,value\n";
  for (const auto& r : curve.rows) out << r.k << ',' << r.count << ",0," << format_number(r.value) << '\n';
}

void write_ensemble_csv(std::ostream& out, const EnsembleSummary& s, const std::function<double(double)>& pred_tail) {
  out << "k,count,mean,median,q25,q75,std";
  if (pred_tail) out << ",pred_tail";
  out << '\n';
  for (const auto& r : s.rows) {
    out << format_number(r.k) << ',' << r.count << ',' << format_number(r.mean) << ',' << format_number(r.median)
        << ',' << format_number(r.q25) << ',' << format_number(r.q75) << ',' << format_number(r.std);
    if (pred_tail) out << ',' << format_number(pred_tail(r.k));
    out << '\n';
  }
}

OutputSink::OutputSink(const std::string& path) : path_(path) {
  if (path.empty() || path == "-") return;
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file_) throw IoError("cannot open '" + path + "' for writing");
}

OutputSink::~OutputSink() = default;

std::ostream& OutputSink::stream() { return file_ ? *file_ : std::cout; }

void OutputSink::close() {
  if (file_) {
    file_->close();
    if (!*file_) throw IoError("failed writing '" + path_ + "'");
  } else {
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
  }
}

} // namespace nullmodel::cli
