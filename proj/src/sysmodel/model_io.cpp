#include "posred/sysmodel/model_io.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "posred/error.hpp"
#include "posred/numkit/matrix_market.hpp"

namespace posred::sysmodel {

namespace fs = std::filesystem;

void save_model(const std::string& dir, const StateSpaceModel& model) {
  fs::create_directories(dir);
  const fs::path root(dir);
  if (model.is_sparse()) {
    numkit::save_market((root / "A.mtx").string(), model.sparse_a());
    numkit::save_market((root / "B.mtx").string(), SparseMatrix(model.b().sparseView(0.0, 0.0)));
    numkit::save_market((root / "C.mtx").string(), SparseMatrix(model.c().sparseView(0.0, 0.0)));
  } else {
    numkit::save_market((root / "A.mtx").string(), model.dense_a());
    numkit::save_market((root / "B.mtx").string(), model.b());
    numkit::save_market((root / "C.mtx").string(), model.c());
  }
  nlohmann::json manifest = {{"n", model.order()},
                             {"m", model.inputs()},
                             {"p", model.outputs()},
                             {"storage", to_string(model.storage())}};
  std::ofstream out(root / "manifest.json");
  if (!out) throw FormatError("cannot write manifest in " + dir);
  out << manifest.dump(2) << '\n';
}

StateSpaceModel load_model(const std::string& dir) {
  const fs::path root(dir);
  std::ifstream in(root / "manifest.json");
  if (!in) throw FormatError("missing manifest.json in " + dir);
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed manifest.json: " + std::string(e.what()));
  }
  const Storage storage = storage_from_string(manifest.value("storage", std::string("dense")));
  const DenseMatrix b = numkit::load_market_dense((root / "B.mtx").string());
  const DenseMatrix c = numkit::load_market_dense((root / "C.mtx").string());
  auto model = storage == Storage::kSparse
                   ? StateSpaceModel(numkit::load_market_sparse((root / "A.mtx").string()), b, c)
                   : StateSpaceModel(numkit::load_market_dense((root / "A.mtx").string()), b, c);
  if (manifest.contains("n") && manifest.at("n").get<Index>() != model.order()) {
    throw FormatError("manifest n does not match A.mtx in " + dir);
  }
  if (manifest.contains("m") && manifest.at("m").get<Index>() != model.inputs()) {
    throw FormatError("manifest m does not match B.mtx in " + dir);
  }
  if (manifest.contains("p") && manifest.at("p").get<Index>() != model.outputs()) {
    throw FormatError("manifest p does not match C.mtx in " + dir);
  }
  return model;
}

}  // namespace posred::sysmodel
