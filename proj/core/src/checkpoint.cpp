#include "warmstart/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "warmstart/errors.hpp"

namespace warmstart {
namespace {

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f32(float f) { u32(std::bit_cast<std::uint32_t>(f)); }
  void raw(const char* p, std::size_t n) { bytes_.insert(bytes_.end(), p, p + n); }
  std::vector<char>& bytes() { return bytes_; }

 private:
  std::vector<char> bytes_;
};

class Reader {
 public:
  Reader(std::vector<char> bytes, std::string what) : bytes_(std::move(bytes)), what_(std::move(what)) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    const std::uint64_t lo = u32();
    const std::uint64_t hi = u32();
    return lo | (hi << 32);
  }
  float f32() { return std::bit_cast<float>(u32()); }
  void raw(char* out, std::size_t n) {
    need(n);
    std::memcpy(out, bytes_.data() + pos_, n);
    pos_ += n;
  }
  bool done() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw CorruptFileError(what_ + ": truncated at byte " + std::to_string(pos_));
  }
  std::vector<char> bytes_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::vector<char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptFileError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& path, const std::vector<char>& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const GameSpec& spec, const Model& model) {
  const NetShape& s = model.shape();
  Writer w;
  w.raw(kCheckpointMagic, sizeof kCheckpointMagic);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(spec.kind));
  w.u32(static_cast<std::uint32_t>(spec.board_size));
  w.u32(static_cast<std::uint32_t>(spec.win_length));
  w.u32(static_cast<std::uint32_t>(s.action_count));
  w.u32(static_cast<std::uint32_t>(s.conv_layers));
  w.u32(static_cast<std::uint32_t>(s.channels));
  w.u32(static_cast<std::uint32_t>(s.dense_layers));
  w.u32(static_cast<std::uint32_t>(s.hidden));
  w.u64(s.hash());
  w.u32(static_cast<std::uint32_t>(model.tensors().size()));
  const auto params = model.parameters();
  for (const auto& t : model.tensors()) {
    w.u32(static_cast<std::uint32_t>(t.rows));
    w.u32(static_cast<std::uint32_t>(t.cols));
    for (std::size_t i = 0; i < t.size(); ++i) w.f32(params[t.offset + i]);
  }
  write_all(path, w.bytes());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  Reader r(read_all(path), "checkpoint " + path.string());
  char magic[8];
  r.raw(magic, sizeof magic);
  if (std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0)
    throw CorruptFileError("checkpoint " + path.string() + ": bad magic");
  const auto version = r.u32();
  if (version != kCheckpointVersion)
    throw CorruptFileError("checkpoint " + path.string() + ": unsupported version " + std::to_string(version));
  GameSpec spec;
  const auto kind = r.u32();
  if (kind > 2) throw CorruptFileError("checkpoint " + path.string() + ": bad game kind");
  spec.kind = static_cast<GameKind>(kind);
  spec.board_size = static_cast<int>(r.u32());
  spec.win_length = static_cast<int>(r.u32());
  NetShape shape;
  shape.board_size = spec.board_size;
  shape.action_count = static_cast<int>(r.u32());
  shape.conv_layers = static_cast<int>(r.u32());
  shape.channels = static_cast<int>(r.u32());
  shape.dense_layers = static_cast<int>(r.u32());
  shape.hidden = static_cast<int>(r.u32());
  const auto hash = r.u64();
  if (hash != shape.hash())
    throw CorruptFileError("checkpoint " + path.string() + ": architecture hash does not match header");
  Model model(shape);
  const auto count = r.u32();
  if (count != model.tensors().size())
    throw CorruptFileError("checkpoint " + path.string() + ": tensor count mismatch");
  auto params = model.parameters();
  for (const auto& t : model.tensors()) {
    const auto rows = r.u32(), cols = r.u32();
    if (static_cast<int>(rows) != t.rows || static_cast<int>(cols) != t.cols)
      throw CorruptFileError("checkpoint " + path.string() + ": tensor " + t.name + " has wrong dimensions");
    for (std::size_t i = 0; i < t.size(); ++i) params[t.offset + i] = r.f32();
  }
  if (!r.done()) throw CorruptFileError("checkpoint " + path.string() + ": trailing bytes");
  return Checkpoint{spec, std::move(model)};
}

Model load_checkpoint(const std::filesystem::path& path, const GameSpec& expected) {
  Checkpoint ck = read_checkpoint(path);
  if (ck.spec.kind != expected.kind || ck.spec.board_size != expected.board_size)
    throw CorruptFileError("checkpoint " + path.string() + " is for " + std::string(to_string(ck.spec.kind)) + " " +
                           std::to_string(ck.spec.board_size) + "x" + std::to_string(ck.spec.board_size) +
                           ", expected " + std::string(to_string(expected.kind)) + " " +
                           std::to_string(expected.board_size) + "x" + std::to_string(expected.board_size));
  if (ck.model.shape().hash() != architecture_for(expected).hash())
    throw CorruptFileError("checkpoint " + path.string() + ": architecture hash mismatch");
  return std::move(ck.model);
}

void save_examples(const std::filesystem::path& path, std::span<const TrainingExample> examples) {
  Writer w;
  for (const auto& ex : examples) {
    const std::uint32_t payload = static_cast<std::uint32_t>(4 + 4 * ex.state.size() + 4 + 4 * ex.policy.size() + 4);
    w.u32(payload);
    w.u32(static_cast<std::uint32_t>(ex.state.size()));
    for (float f : ex.state) w.f32(f);
    w.u32(static_cast<std::uint32_t>(ex.policy.size()));
    for (float f : ex.policy) w.f32(f);
    w.f32(ex.z);
  }
  write_all(path, w.bytes());
}

std::vector<TrainingExample> load_examples(const std::filesystem::path& path) {
  Reader r(read_all(path), "examples " + path.string());
  std::vector<TrainingExample> out;
  while (!r.done()) {
    const auto payload = r.u32();
    if (payload > r.remaining()) throw CorruptFileError("examples " + path.string() + ": truncated record");
    auto count = [&] {
      const std::uint32_t n = r.u32();
      if (static_cast<std::size_t>(n) * 4 > payload) throw CorruptFileError("examples " + path.string() + ": bad length");
      return n;
    };
    TrainingExample ex;
    ex.state.resize(count());
    for (auto& f : ex.state) f = r.f32();
    ex.policy.resize(count());
    for (auto& f : ex.policy) f = r.f32();
    ex.z = r.f32();
    const std::size_t expected = 4 + 4 * ex.state.size() + 4 + 4 * ex.policy.size() + 4;
    if (expected != payload) throw CorruptFileError("examples " + path.string() + ": record length mismatch");
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace warmstart
