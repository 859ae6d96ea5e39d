#include "orbtherm/checkpoint.hpp"

#include <cstring>
#include <sstream>

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/array.hpp>
#include <cereal/types/deque.hpp>
#include <cereal/types/optional.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>
#include <openssl/sha.h>

#include "orbtherm/output.hpp"

namespace orbtherm {

template <class Ar>
void serialize(Ar& ar, Abm10<averaged_dim>::Snapshot& s) {
  ar(s.t0, s.dt, s.steps, s.y, s.history);
}

template <class Ar>
void serialize(Ar& ar, LibrationTracker& t) {
  ar(t.unwrapped, t.previous, t.started, t.step_min, t.step_max, t.window, t.window_len);
}

template <class Ar>
void serialize(Ar& ar, SimulationSample& s) {
  ar(s.t_yr, s.a5, s.e5, s.inc5_deg, s.a2, s.e2, s.inc2_deg, s.theta_deg, s.librating, s.tmean5, s.tcenter5, s.q5,
     s.k2q5, s.power5, s.tmean2, s.q2, s.k2q2, s.power2, s.momentum);
}

template <class Ar>
void serialize(Ar& ar, SimulationSummary& s) {
  ar(s.capture_time_yr, s.exit_time_yr, s.e5_at_exit, s.e5_final, s.e5_max, s.tmean5_initial, s.tmean5_final,
     s.tmean5_max, s.q5_min, s.power5_max);
}

template <class Ar>
void serialize(Ar& ar, SimulationRecord& r) {
  ar(r.samples, r.summary);
}

template <class Ar>
void serialize(Ar& ar, CheckpointData& c) {
  ar(c.digest, c.macro_index, c.dynamics, c.table_alpha, c.temps5, c.temps2, c.k2q5, c.q5, c.power5, c.k2q2, c.q2,
     c.power2, c.tracker, c.was_librating, c.record);
}

namespace {

constexpr char magic[8] = {'O', 'R', 'B', 'T', 'C', 'K', 'P', 'T'};
constexpr std::size_t header_size = sizeof(magic) + 4 + 8;

void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out += static_cast<char>((v >> (8 * i)) & 0xffu);
}

std::uint64_t get_le(std::string_view in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return v;
}

std::string digest_bytes(std::string_view payload) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(payload.data()), payload.size(), md);
  return std::string(reinterpret_cast<const char*>(md), SHA256_DIGEST_LENGTH);
}

}  // namespace

std::string serialize_checkpoint(const CheckpointData& data) {
  std::ostringstream ss(std::ios::binary);
  {
    cereal::PortableBinaryOutputArchive ar(ss);
    ar(const_cast<CheckpointData&>(data));
  }
  const std::string payload = ss.str();
  std::string out(magic, sizeof(magic));
  put_le(out, checkpoint_format_version, 4);
  put_le(out, payload.size(), 8);
  out += payload;
  out += digest_bytes(payload);
  return out;
}

CheckpointData deserialize_checkpoint(std::string_view bytes) {
  if (bytes.size() < header_size) throw CheckpointError("checkpoint truncated: header incomplete");
  if (std::memcmp(bytes.data(), magic, sizeof(magic)) != 0) throw CheckpointError("not a checkpoint file (bad magic)");
  const auto version = static_cast<std::uint32_t>(get_le(bytes, sizeof(magic), 4));
  if (version != checkpoint_format_version)
    throw CheckpointError("checkpoint format version " + std::to_string(version) + " is not supported (expected " +
                          std::to_string(checkpoint_format_version) + ")");
  const std::uint64_t len = get_le(bytes, sizeof(magic) + 4, 8);
  if (bytes.size() - header_size < len + SHA256_DIGEST_LENGTH)
    throw CheckpointError("checkpoint truncated: expected " + std::to_string(len) + " payload bytes");
  if (bytes.size() != header_size + len + SHA256_DIGEST_LENGTH) throw CheckpointError("checkpoint has trailing bytes");
  const std::string_view payload = bytes.substr(header_size, len);
  if (digest_bytes(payload) != bytes.substr(header_size + len, SHA256_DIGEST_LENGTH))
    throw CheckpointError("checkpoint checksum mismatch");
  CheckpointData data;
  try {
    std::istringstream ss(std::string(payload), std::ios::binary);
    cereal::PortableBinaryInputArchive ar(ss);
    ar(data);
  } catch (const cereal::Exception& e) {
    throw CheckpointError(std::string("checkpoint payload unreadable: ") + e.what());
  }
  return data;
}

void save_checkpoint(const std::filesystem::path& path, const CheckpointData& data) {
  write_file(path, serialize_checkpoint(data));
}

CheckpointData load_checkpoint(const std::filesystem::path& path) { return deserialize_checkpoint(read_file(path)); }

}  // namespace orbtherm
