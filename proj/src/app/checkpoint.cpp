#include "gencode/app/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "gencode/common/error.hpp"

namespace gencode::app {

namespace {

// Host order is written as-is; the supported targets are little-endian.
template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <class T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw Error(ErrorFamily::Data, "BadCheckpoint", "checkpoint is truncated");
    }
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  void doubles(std::vector<double>& out, std::size_t n) {
    if (n > (bytes_.size() - pos_) / sizeof(double)) {
      throw Error(ErrorFamily::Data, "BadCheckpoint", "checkpoint is truncated");
    }
    out.resize(n);
    std::memcpy(out.data(), bytes_.data() + pos_, n * sizeof(double));
    pos_ += n * sizeof(double);
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_checkpoint(const scorer::ModelState& model) {
  std::string out = "GCF1";
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint64_t>(out, model.classes);
  put<std::uint64_t>(out, model.dim);
  put<std::uint64_t>(out, model.step_count);
  const auto& h = model.hyper;
  put<std::uint32_t>(out, h.optimizer == scorer::Optimizer::Adam ? 0 : 1);
  for (double d : {h.learning_rate, h.l2, h.beta1, h.beta2, h.eps, h.init_scale}) put(out, d);
  put<std::uint64_t>(out, h.seed);
  const bool moments = !model.adam_m.empty();
  put<std::uint8_t>(out, moments ? 1 : 0);
  auto append = [&](const std::vector<double>& v) {
    out.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
  };
  append(model.weights);
  if (moments) {
    append(model.adam_m);
    append(model.adam_v);
  }
  return out;
}

scorer::ModelState decode_checkpoint(const std::string& bytes) {
  if (bytes.size() < 8 || bytes.compare(0, 4, "GCF1") != 0) {
    throw Error(ErrorFamily::Data, "BadCheckpoint", "missing GCF1 magic");
  }
  Reader r(bytes);
  r.get<std::uint32_t>();  // magic
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw Error(ErrorFamily::Data, "VersionMismatch",
                "checkpoint version " + std::to_string(version) + ", expected " +
                    std::to_string(kCheckpointVersion));
  }
  scorer::ModelState m;
  m.classes = r.get<std::uint64_t>();
  m.dim = r.get<std::uint64_t>();
  m.step_count = r.get<std::uint64_t>();
  const auto opt = r.get<std::uint32_t>();
  if (opt > 1) throw Error(ErrorFamily::Data, "BadCheckpoint", "unknown optimizer");
  m.hyper.optimizer = opt == 0 ? scorer::Optimizer::Adam : scorer::Optimizer::Sgd;
  m.hyper.learning_rate = r.get<double>();
  m.hyper.l2 = r.get<double>();
  m.hyper.beta1 = r.get<double>();
  m.hyper.beta2 = r.get<double>();
  m.hyper.eps = r.get<double>();
  m.hyper.init_scale = r.get<double>();
  m.hyper.seed = r.get<std::uint64_t>();
  const auto moments = r.get<std::uint8_t>();
  if (m.classes < 2 || m.dim == 0 || m.classes > (std::size_t{1} << 20) ||
      m.dim > (std::size_t{1} << 30)) {
    throw Error(ErrorFamily::Data, "BadCheckpoint", "implausible dimensions");
  }
  const std::size_t n = m.classes * m.dim;
  r.doubles(m.weights, n);
  if (moments == 1) {
    r.doubles(m.adam_m, n);
    r.doubles(m.adam_v, n);
  } else if (moments != 0) {
    throw Error(ErrorFamily::Data, "BadCheckpoint", "bad moments flag");
  }
  if (!r.done()) throw Error(ErrorFamily::Data, "BadCheckpoint", "trailing bytes");
  return m;
}

void save_checkpoint(const scorer::ModelState& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  const std::string bytes = encode_checkpoint(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorFamily::Data, "IoError", "cannot write " + path);
}

scorer::ModelState load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorFamily::Data, "FileNotFound", "cannot open checkpoint " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace gencode::app
