#include "din/audio/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace din::audio {

namespace {

std::uint32_t rd_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t rd_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void wr_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xFF));
}

void wr_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
}

void wr_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

} // namespace

Waveform wav_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedWav("cannot open " + path);
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
    throw MalformedWav("not a RIFF/WAVE file: " + path);

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const unsigned char* hdr = buf.data() + pos;
    const std::uint32_t chunk_len = rd_u32(hdr + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_len > buf.size()) throw MalformedWav("truncated chunk in " + path);
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw MalformedWav("fmt chunk too small in " + path);
      const unsigned char* f = buf.data() + body;
      format = rd_u16(f);
      channels = rd_u16(f + 2);
      rate = rd_u32(f + 4);
      bits = rd_u16(f + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = buf.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1); // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) throw MalformedWav("missing fmt/data chunk in " + path);
  if (format != 1) throw UnsupportedFormat("non-PCM WAV: " + path);
  if (bits != 16) throw UnsupportedFormat(std::to_string(bits) + "-bit WAV not supported: " + path);
  if (channels != 1) throw UnsupportedFormat("only mono WAV supported: " + path);

  Waveform w;
  w.sample_rate = static_cast<int>(rate);
  Waveform::check_rate(w.sample_rate);
  const std::size_t n = data_len / 2;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<std::int16_t>(rd_u16(data + 2 * i));
    w.samples[i] = static_cast<float>(v) / 32768.0f;
  }
  return w;
}

void wav_write(const std::string& path, const Waveform& w) {
  Waveform::check_rate(w.sample_rate);
  const auto n = static_cast<std::uint32_t>(w.samples.size());
  const std::uint32_t data_len = n * 2;

  std::vector<unsigned char> out;
  out.reserve(44 + data_len);
  wr_tag(out, "RIFF");
  wr_u32(out, 36 + data_len);
  wr_tag(out, "WAVE");
  wr_tag(out, "fmt ");
  wr_u32(out, 16);
  wr_u16(out, 1); // PCM
  wr_u16(out, 1); // mono
  wr_u32(out, static_cast<std::uint32_t>(w.sample_rate));
  wr_u32(out, static_cast<std::uint32_t>(w.sample_rate) * 2);
  wr_u16(out, 2);  // block align
  wr_u16(out, 16); // bits
  wr_tag(out, "data");
  wr_u32(out, data_len);
  for (std::size_t i = 0; i < n; ++i) {
    const float clamped = std::clamp(w.samples[i], -1.0f, 1.0f);
    const auto q = static_cast<std::int16_t>(
        std::clamp(std::lround(clamped * 32768.0f), -32768L, 32767L));
    wr_u16(out, static_cast<std::uint16_t>(q));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path);
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
  if (!f) throw Error("short write to " + path);
}

} // namespace din::audio
