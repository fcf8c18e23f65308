#include "hcms/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "hcms/config.hpp"
#include "hcms/errors.hpp"
#include "text_util.hpp"

namespace hcms {

namespace {

constexpr std::string_view kMagic = "HCMS";
constexpr std::string_view kTrailer = "SMCH";

class Writer {
 public:
  void bytes(std::string_view s) { out_.append(s); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void blob32(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  void blob64(std::string_view s) {
    u64(s.size());
    bytes(s);
  }
  std::string take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::string_view bytes(std::uint64_t n) {
    if (n > data_.size() - pos_) corrupt("unexpected end of file");
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string_view blob32() { return bytes(u32()); }
  std::string_view blob64() { return bytes(u64()); }
  bool at_end() const { return pos_ == data_.size(); }

  [[noreturn]] static void corrupt(const std::string& what) {
    throw CheckpointError(CheckpointError::Kind::kCorrupt, "corrupt checkpoint: " + what);
  }

 private:
  std::uint64_t get(int width) {
    const auto s = bytes(static_cast<std::uint64_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i])) << (8 * i);
    return v;
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

struct StoredParameter {
  std::string name;
  Shape shape;
  std::uint64_t offset;
  std::uint64_t count;
};

}  // namespace

std::string encode_checkpoint(const Model& model, const Vocabulary& vocab, const CleaningConfig& cleaning) {
  KeyValueDoc config;
  write_config(config, model.config());
  write_config(config, cleaning);

  Writer w;
  w.bytes(kMagic);
  w.u32(kCheckpointVersion);
  w.blob64(config.format());

  w.u64(vocab.size());
  for (const auto& tok : vocab.tokens()) w.blob32(tok);

  auto& mutable_model = const_cast<Model&>(model);
  const auto params = mutable_model.parameters();
  w.u32(static_cast<std::uint32_t>(params.size()));
  std::uint64_t offset = 0;
  for (const auto& ref : params) {
    w.blob32(ref.name);
    const auto& shape = ref.param->shape();
    w.u32(static_cast<std::uint32_t>(shape.size()));
    for (auto extent : shape) w.u64(extent);
    w.u64(offset);
    w.u64(ref.param->value.size());
    offset += ref.param->value.size() * sizeof(double);
  }
  w.u64(offset);
  for (const auto& ref : params) {
    for (double x : ref.param->value.values()) w.f64(x);
  }
  w.bytes(kTrailer);
  return w.take();
}

LoadedModel decode_checkpoint(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    throw CheckpointError(CheckpointError::Kind::kVersion, "not an HCMS checkpoint (bad magic)");
  }
  Reader r(bytes.substr(kMagic.size()));
  const auto version = r.u32();
  if (version != kCheckpointVersion) {
    throw CheckpointError(CheckpointError::Kind::kVersion,
                          "unsupported checkpoint version " + std::to_string(version) + " (expected " +
                              std::to_string(kCheckpointVersion) + ")");
  }

  ModelConfig model_config;
  CleaningConfig cleaning;
  try {
    const auto config = KeyValueDoc::parse(r.blob64());
    read_config(config, model_config);
    read_config(config, cleaning);
  } catch (const ConfigError& e) {
    Reader::corrupt(std::string("configuration block: ") + e.what());
  }

  const auto vocab_size = r.u64();
  if (vocab_size > bytes.size()) Reader::corrupt("implausible vocabulary size");
  std::vector<std::string> tokens;
  tokens.reserve(vocab_size);
  for (std::uint64_t i = 0; i < vocab_size; ++i) tokens.emplace_back(r.blob32());

  const auto param_count = r.u32();
  std::vector<StoredParameter> stored;
  for (std::uint32_t i = 0; i < param_count; ++i) {
    StoredParameter p;
    p.name = std::string(r.blob32());
    const auto rank = r.u32();
    if (rank == 0 || rank > 8) Reader::corrupt("parameter " + p.name + " has rank " + std::to_string(rank));
    for (std::uint32_t k = 0; k < rank; ++k) p.shape.push_back(r.u64());
    p.offset = r.u64();
    p.count = r.u64();
    stored.push_back(std::move(p));
  }
  const auto data = r.blob64();
  if (r.bytes(kTrailer.size()) != kTrailer || !r.at_end()) Reader::corrupt("missing trailer");

  Vocabulary vocab;
  try {
    vocab = Vocabulary::from_tokens(std::move(tokens));
  } catch (const VocabularyError& e) {
    Reader::corrupt(e.what());
  }
  if (vocab.size() != model_config.vocab_size) {
    throw CheckpointError(CheckpointError::Kind::kShape,
                          "vocabulary holds " + std::to_string(vocab.size()) + " tokens but the model expects " +
                              std::to_string(model_config.vocab_size));
  }

  std::optional<Model> model;
  try {
    model.emplace(model_config, 0);
  } catch (const Error& e) {
    throw CheckpointError(CheckpointError::Kind::kShape, std::string("stored configuration is invalid: ") + e.what());
  }
  auto params = model->parameters();
  if (params.size() != stored.size()) {
    throw CheckpointError(CheckpointError::Kind::kShape, "checkpoint stores " + std::to_string(stored.size()) +
                                                             " parameters, configuration implies " +
                                                             std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& s = stored[i];
    auto& target = *params[i].param;
    if (s.name != params[i].name || s.shape != target.shape()) {
      throw CheckpointError(CheckpointError::Kind::kShape,
                            "parameter " + s.name + " " + to_string(s.shape) + " does not match expected " +
                                params[i].name + " " + to_string(target.shape()));
    }
    if (s.count != target.value.size() || s.offset % sizeof(double) != 0 ||
        s.offset > data.size() || s.count * sizeof(double) > data.size() - s.offset) {
      Reader::corrupt("data range of parameter " + s.name + " is out of bounds");
    }
    Reader values(data.substr(s.offset, s.count * sizeof(double)));
    for (auto& x : target.value.values()) x = values.f64();
  }
  return LoadedModel{std::move(*model), std::move(vocab), cleaning};
}

void save_checkpoint(const std::filesystem::path& path, const Model& model, const Vocabulary& vocab,
                     const CleaningConfig& cleaning) {
  write_text_file(path, encode_checkpoint(model, vocab, cleaning));
}

LoadedModel load_checkpoint(const std::filesystem::path& path) { return decode_checkpoint(read_text_file(path)); }

}  // namespace hcms
