#include "bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include "nmwm/imageio.hpp"
#include "nmwm/metrics.hpp"
#include "nmwm/rng.hpp"

namespace nmwm::cli {

namespace {

double parse_double(const std::string& s)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) out.push_back(part);
    return out;
}

} // namespace

std::vector<BenchAttack> standard_attacks(std::size_t n, std::uint64_t seed)
{
    auto make = [](AttackKind kind) {
        AttackSpec s;
        s.kind = kind;
        return s;
    };
    std::vector<BenchAttack> out;
    out.push_back({"median", make(AttackKind::median)});
    out.push_back({"gaussian_lp", make(AttackKind::gaussian_lp)});
    out.push_back({"average", make(AttackKind::average)});
    out.push_back({"wiener", make(AttackKind::wiener)});
    AttackSpec q70 = make(AttackKind::jpeg);
    q70.quality = 70;
    out.push_back({"jpeg70", q70});
    AttackSpec q50 = make(AttackKind::jpeg);
    q50.quality = 50;
    out.push_back({"jpeg50", q50});
    out.push_back({"awgn", make(AttackKind::awgn)});
    out.push_back({"salt_pepper", make(AttackKind::salt_pepper)});
    AttackSpec down = make(AttackKind::resize);
    down.intermediate_size = std::max<std::size_t>(2, n * 3 / 4);
    out.push_back({"resize_down", down});
    AttackSpec up = make(AttackKind::resize);
    up.intermediate_size = 2 * n;
    out.push_back({"resize_up", up});
    out.push_back({"intensity", make(AttackKind::intensity)});
    for (std::size_t i = 0; i < out.size(); ++i) out[i].spec.seed = derive_seed(seed, i);
    return out;
}

std::vector<double> parse_alphas(const std::string& text)
{
    std::vector<double> out;
    const auto parts = split(text, ':');
    if (parts.size() == 3) {
        const double lo = parse_double(parts[0]);
        const double step = parse_double(parts[1]);
        const double hi = parse_double(parts[2]);
        if (!(step > 0) || hi < lo) throw std::invalid_argument("alpha range needs step > 0 and end >= start");
        const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (long long k = 0; k < count; ++k) {
            // Round away the drift of repeated decimal steps.
            out.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
        }
    } else if (parts.size() == 1) {
        for (const auto& p : split(text, ',')) out.push_back(parse_double(p));
    } else {
        throw std::invalid_argument("alphas: expected start:step:end or a comma list");
    }
    if (out.empty()) throw std::invalid_argument("alphas: empty list");
    for (double a : out)
        if (!(a > 0)) throw std::invalid_argument("alphas must be positive");
    return out;
}

std::vector<Method> parse_methods(const std::string& text)
{
    std::vector<Method> out;
    for (const auto& p : split(text, ',')) {
        const double v = parse_double(p);
        const auto m = method_from_number(static_cast<int>(v));
        if (!m || v != std::floor(v)) throw std::invalid_argument("unknown method '" + p + "'");
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    if (out.empty()) throw std::invalid_argument("methods: empty list");
    return out;
}

std::vector<NamedImage> load_hosts(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir)) throw std::runtime_error("hosts: not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".pgm") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("hosts: no .pgm files in " + dir.string());
    std::vector<NamedImage> out;
    for (const auto& f : files) out.push_back({f.stem().string(), read_pgm(read_file(f))});
    return out;
}

std::vector<PsnrRow> psnr_table(const std::vector<NamedImage>& hosts, const ImageU8& watermark,
                                const std::vector<Method>& methods, const std::vector<double>& alphas,
                                bool quantized)
{
    if (hosts.empty()) throw std::invalid_argument("bench: empty host set");
    const RealMatrix w = to_real(watermark);
    std::vector<std::future<std::vector<PsnrRow>>> jobs;
    for (const auto& h : hosts) {
        jobs.push_back(std::async(std::launch::async, [&h, &w, &methods, &alphas, quantized] {
            SpectralEmbedder embedder(to_real(h.image), w);
            std::vector<PsnrRow> rows;
            for (Method m : methods) {
                for (double a : alphas) {
                    const RealMatrix y = embedder.embed(m, a).watermarked;
                    const double p = quantized ? psnr(h.image, quantize_u8(y)) : psnr(embedder.host(), y);
                    rows.push_back({h.id, m, a, p});
                }
            }
            return rows;
        }));
    }
    std::vector<PsnrRow> rows;
    for (auto& j : jobs) {
        auto part = j.get();
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::sort(rows.begin(), rows.end(), [](const PsnrRow& a, const PsnrRow& b) {
        if (a.host != b.host) return a.host < b.host;
        if (a.method != b.method) return a.method < b.method;
        return a.alpha < b.alpha;
    });
    return rows;
}

std::vector<BerRow> ber_table(const ImageU8& host, const ImageU8& watermark, const std::vector<Method>& methods,
                              const std::vector<BenchAttack>& attacks, double alpha)
{
    SpectralEmbedder embedder(to_real(host), to_real(watermark));
    std::vector<BerRow> rows;
    std::vector<std::pair<Method, WatermarkKey>> keys;
    std::vector<ImageU8> marked;
    for (Method m : methods) {
        EmbedResult r = embedder.embed(m, alpha);
        marked.push_back(quantize_u8(r.watermarked));
        keys.emplace_back(m, std::move(r.key));
    }
    for (const auto& attack : attacks) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const ImageU8 attacked = apply_attack(marked[i], attack.spec);
            const ImageU8 estimate = quantize_u8(extract(to_real(attacked), keys[i].second).watermark);
            rows.push_back({attack.id, keys[i].first, ber(watermark, estimate)});
        }
    }
    return rows;
}

std::string format_number(double v, int digits)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string format_psnr_csv(const std::vector<PsnrRow>& rows)
{
    std::string out = "host,method,alpha,psnr_db\n";
    for (const auto& r : rows) {
        out += r.host + "," + std::to_string(static_cast<int>(r.method)) + "," + format_number(r.alpha, 4) + "," +
               format_number(r.psnr_db, 4) + "\n";
    }
    return out;
}

std::string format_ber_csv(const std::vector<BerRow>& rows)
{
    std::string out = "attack,method,ber_pct\n";
    for (const auto& r : rows) {
        out += r.attack + "," + std::to_string(static_cast<int>(r.method)) + "," + format_number(r.ber_pct, 4) + "\n";
    }
    return out;
}

} // namespace nmwm::cli
