#pragma once

#include "nullmodel/ensemble.hpp"
#include "nullmodel/stats.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <string>

namespace nullmodel::cli {

// Shortest round-trip decimal form; identical across runs and platforms.
std::string format_number(double x);

// CSV `k,count,eps,value`
void write_band_csv(std::ostream& out, const std::vector<AnndRow>& rows);
void write_clustering_csv(std::ostream& out, const ClusteringCurve& curve);

// CSV `k,count,mean,median,q25,q75,std[,pred_tail]`
void write_ensemble_csv(std::ostream& out, const EnsembleSummary& s,
                        const std::function<double(double)>& pred_tail = nullptr);

// Opens `path` for writing or returns std::cout when path is empty or "-".
// Throws IoError when the file cannot be created.
class OutputSink {
public:
  explicit OutputSink(const std::string& path);
  ~OutputSink();
  std::ostream& stream();
  void close();

private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

} // namespace nullmodel::cli
