#include "nmwm/imageio.hpp"

#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace nmwm {

namespace {

constexpr std::uint8_t kKeyVersion = 1;

class Writer {
public:
    void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v)
    {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }
    void reals(std::span<const double> v)
    {
        for (double x : v) f64(x);
    }
    void complexes(std::span<const Complex> v)
    {
        for (const Complex& z : v) {
            f64(z.real());
            f64(z.imag());
        }
    }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

class Reader {
public:
    Reader(std::span<const std::uint8_t> in, const char* what) : in_(in), what_(what) {}

    std::size_t remaining() const { return in_.size() - pos_; }
    std::size_t position() const { return pos_; }

    void need(std::size_t n) const
    {
        if (remaining() < n) throw FormatError(std::string(what_) + ": truncated data");
    }
    bool magic(std::string_view m)
    {
        need(m.size());
        const bool ok = std::memcmp(in_.data() + pos_, m.data(), m.size()) == 0;
        pos_ += m.size();
        return ok;
    }
    std::uint8_t u8()
    {
        need(1);
        return in_[pos_++];
    }
    std::uint32_t u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
        return v;
    }
    double f64()
    {
        need(8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
        return std::bit_cast<double>(bits);
    }
    std::vector<double> reals(std::size_t count)
    {
        need(count * 8);
        std::vector<double> v(count);
        for (double& x : v) x = f64();
        return v;
    }
    RealMatrix real_matrix(std::size_t rows, std::size_t cols) { return {rows, cols, reals(rows * cols)}; }
    ComplexMatrix complex_matrix(std::size_t rows, std::size_t cols)
    {
        need(rows * cols * 16);
        std::vector<Complex> v(rows * cols);
        for (Complex& z : v) {
            const double re = f64();
            z = Complex(re, f64());
        }
        return {rows, cols, std::move(v)};
    }

private:
    std::span<const std::uint8_t> in_;
    const char* what_;
    std::size_t pos_ = 0;
};

// Reads one whitespace-delimited PGM header token, skipping comments.
std::string pgm_token(std::span<const std::uint8_t> bytes, std::size_t& pos)
{
    while (pos < bytes.size()) {
        if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(bytes[pos])) {
            ++pos;
        } else {
            break;
        }
    }
    std::string tok;
    while (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#') {
        tok.push_back(static_cast<char>(bytes[pos++]));
    }
    if (tok.empty()) throw FormatError("pgm: truncated header");
    return tok;
}

std::size_t pgm_number(std::span<const std::uint8_t> bytes, std::size_t& pos, const char* field)
{
    const std::string tok = pgm_token(bytes, pos);
    std::size_t value = 0;
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw FormatError(std::string("pgm: bad ") + field);
        value = value * 10 + static_cast<std::size_t>(c - '0');
        if (value > (1u << 30)) throw FormatError(std::string("pgm: ") + field + " too large");
    }
    return value;
}

void write_payload(Writer& w, const WatermarkKey& key)
{
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SymPayload>) {
                w.reals(p.host_values);
                w.reals(p.wm_vectors.data());
                w.reals(p.wm_triangle);
            } else if constexpr (std::is_same_v<P, SkewPayload>) {
                w.reals(p.host_imag_values);
                w.complexes(p.wm_vectors.data());
                w.reals(p.wm_triangle);
            } else if constexpr (std::is_same_v<P, DualPayload>) {
                w.reals(p.host_sym_values);
                w.reals(p.host_skew_values);
                w.reals(p.wm_sym_vectors.data());
                w.complexes(p.wm_skew_vectors.data());
            } else {
                w.reals(p.host_singular);
                w.reals(p.wm_u.data());
                w.reals(p.wm_v.data());
            }
        },
        key.payload);
}

WatermarkKey read_one_key(Reader& r)
{
    if (!r.magic("NMWK")) throw FormatError("key: bad magic");
    const std::uint8_t version = r.u8();
    if (version != kKeyVersion) throw FormatError("key: unsupported version " + std::to_string(version));
    const auto method = method_from_number(r.u8());
    if (!method) throw FormatError("key: unknown method byte");

    WatermarkKey key;
    key.alpha = r.f64();
    key.n = r.u32();
    key.m = r.u32();
    if (key.m == 0 || key.m > key.n) throw FormatError("key: inconsistent sizes");
    const std::size_t n = key.n;
    const std::size_t m = key.m;
    if (r.remaining() < key_payload_size(*method, n, m)) throw FormatError("key: payload shorter than declared sizes");
    const std::size_t tri = m * (m + 1) / 2;

    switch (*method) {
    case Method::sym: {
        SymPayload p;
        p.host_values = r.reals(n);
        p.wm_vectors = r.real_matrix(m, m);
        p.wm_triangle = r.reals(tri);
        key.payload = std::move(p);
        break;
    }
    case Method::skew: {
        SkewPayload p;
        p.host_imag_values = r.reals(n);
        p.wm_vectors = r.complex_matrix(m, m);
        p.wm_triangle = r.reals(tri);
        key.payload = std::move(p);
        break;
    }
    case Method::dual: {
        DualPayload p;
        p.host_sym_values = r.reals(n);
        p.host_skew_values = r.reals(n);
        p.wm_sym_vectors = r.real_matrix(m, m);
        p.wm_skew_vectors = r.complex_matrix(m, m);
        key.payload = std::move(p);
        break;
    }
    case Method::svd: {
        SvdPayload p;
        p.host_singular = r.reals(n);
        p.wm_u = r.real_matrix(m, m);
        p.wm_v = r.real_matrix(m, m);
        key.payload = std::move(p);
        break;
    }
    }
    return key;
}

} // namespace

Bytes write_pgm(const ImageU8& img)
{
    Writer w;
    w.bytes("P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n255\n");
    Bytes out = w.take();
    out.insert(out.end(), img.data().begin(), img.data().end());
    return out;
}

ImageU8 read_pgm(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw FormatError("pgm: not a binary PGM (P5)");
    std::size_t pos = 2;
    const std::size_t cols = pgm_number(bytes, pos, "width");
    const std::size_t rows = pgm_number(bytes, pos, "height");
    const std::size_t maxval = pgm_number(bytes, pos, "maxval");
    if (maxval != 255) throw FormatError("pgm: only maxval 255 is supported, got " + std::to_string(maxval));
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw FormatError("pgm: truncated header");
    ++pos;
    if (bytes.size() - pos < rows * cols) throw FormatError("pgm: truncated pixel data");
    std::vector<std::uint8_t> px(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(pos + rows * cols));
    return {rows, cols, std::move(px)};
}

std::size_t key_payload_size(Method method, std::size_t n, std::size_t m)
{
    const std::size_t tri = m * (m + 1) / 2;
    switch (method) {
    case Method::sym: return 8 * (n + m * m + tri);
    case Method::skew: return 8 * (n + 2 * m * m + tri);
    case Method::dual: return 8 * (2 * n + m * m + 2 * m * m);
    case Method::svd: return 8 * (n + 2 * m * m);
    }
    return 0;
}

Bytes write_key(const WatermarkKey& key)
{
    key.validate();
    Writer w;
    w.bytes("NMWK");
    w.u8(kKeyVersion);
    w.u8(static_cast<std::uint8_t>(key.method()));
    w.f64(key.alpha);
    w.u32(key.n);
    w.u32(key.m);
    write_payload(w, key);
    return w.take();
}

Bytes write_keys(std::span<const WatermarkKey> keys)
{
    Bytes out;
    for (const auto& k : keys) {
        const Bytes one = write_key(k);
        out.insert(out.end(), one.begin(), one.end());
    }
    return out;
}

WatermarkKey read_key(std::span<const std::uint8_t> bytes)
{
    Reader r(bytes, "key");
    WatermarkKey key = read_one_key(r);
    if (r.remaining() != 0) throw FormatError("key: trailing bytes after payload");
    return key;
}

std::vector<WatermarkKey> read_keys(std::span<const std::uint8_t> bytes)
{
    Reader r(bytes, "key");
    std::vector<WatermarkKey> keys;
    do {
        keys.push_back(read_one_key(r));
    } while (r.remaining() > 0);
    return keys;
}

Bytes write_float_image(const RealMatrix& img)
{
    Writer w;
    w.bytes("NMIF");
    w.u32(static_cast<std::uint32_t>(img.rows()));
    w.u32(static_cast<std::uint32_t>(img.cols()));
    w.reals(img.data());
    return w.take();
}

RealMatrix read_float_image(std::span<const std::uint8_t> bytes)
{
    Reader r(bytes, "float image");
    if (!r.magic("NMIF")) throw FormatError("float image: bad magic");
    const std::size_t rows = r.u32();
    const std::size_t cols = r.u32();
    if (r.remaining() != 8 * rows * cols) {
        throw FormatError("float image: expected " + std::to_string(12 + 8 * rows * cols) + " bytes, got " +
                          std::to_string(bytes.size()));
    }
    return r.real_matrix(rows, cols);
}

Bytes read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace nmwm
