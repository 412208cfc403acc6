#include "nmwm/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nmwm {

namespace {

void check_inputs(const RealMatrix& host, const RealMatrix& watermark, double alpha)
{
    if (!host.square() || !watermark.square()) throw std::invalid_argument("embed: images must be square");
    if (watermark.rows() == 0) throw std::invalid_argument("embed: empty watermark");
    if (watermark.rows() > host.rows()) {
        throw std::invalid_argument("embed: watermark side " + std::to_string(watermark.rows()) +
                                    " exceeds host side " + std::to_string(host.rows()));
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("embed: alpha must be positive");
    if (!all_finite(host) || !all_finite(watermark)) throw std::invalid_argument("embed: non-finite pixels");
}

template <typename P>
const P& payload_of(const WatermarkKey& key, Method expected)
{
    key.validate();
    const P* p = std::get_if<P>(&key.payload);
    if (p == nullptr) {
        throw std::invalid_argument(std::string("extract: key holds a ") + method_name(key.method()) +
                                    " payload, expected " + method_name(expected));
    }
    if (!(key.alpha > 0.0) || !std::isfinite(key.alpha)) {
        throw std::invalid_argument("extract: key alpha must be positive");
    }
    return *p;
}

void check_received(const RealMatrix& received, const WatermarkKey& key)
{
    if (!received.square() || received.rows() != key.n) {
        throw std::invalid_argument("extract: received image is " + std::to_string(received.rows()) + "x" +
                                    std::to_string(received.cols()) + ", key expects side " + std::to_string(key.n));
    }
    if (!all_finite(received)) throw std::invalid_argument("extract: non-finite pixels");
}

// Host slots in signed-descending order of their eigenvalue.
std::vector<std::size_t> signed_order(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

bool tagged_negative(const RealMatrix& vectors, std::size_t k)
{
    double best = -1.0;
    double lead = 0.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
        const double mag = std::abs(vectors(r, k));
        if (mag > best) {
            best = mag;
            lead = vectors(r, k);
        }
    }
    return lead < 0.0;
}

RealMatrix sign_tagged(const SymEigen& e)
{
    RealMatrix u = e.vectors;
    for (std::size_t k = 0; k < u.cols(); ++k)
        if (e.values[k] < 0.0)
            for (std::size_t r = 0; r < u.rows(); ++r) u(r, k) = -u(r, k);
    return u;
}

// Symmetric spectra are aligned in signed order: positive watermark
// eigenvalues go onto the largest host eigenvalues, negative ones onto the
// most negative. Both sequences are then non-increasing, so their sum is
// too, and the received spectrum comes back in the same slot order for any
// strength. Returns the offset for every canonical host slot.
std::vector<double> symmetric_offsets(std::span<const double> host_values, std::span<const double> wm_values,
                                      double factor)
{
    const std::size_t n = host_values.size();
    const auto order = signed_order(host_values);
    std::vector<double> delta(n, 0.0);
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (double w : wm_values) {
        const std::size_t slot = w >= 0.0 ? order[pos++] : order[n - 1 - neg++];
        delta[slot] = factor * w;
    }
    return delta;
}

// Inverse of symmetric_offsets: the watermark spectrum in canonical order,
// read from received-minus-host differences taken in signed order.
std::vector<double> recover_symmetric(std::span<const double> received_values, std::span<const double> host_values,
                                      const RealMatrix& tagged_vectors, double factor)
{
    const std::size_t n = host_values.size();
    std::vector<double> r(received_values.begin(), received_values.end());
    std::vector<double> h(host_values.begin(), host_values.end());
    std::sort(r.begin(), r.end(), std::greater<>());
    std::sort(h.begin(), h.end(), std::greater<>());

    const std::size_t m = tagged_vectors.cols();
    std::vector<double> w(m);
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t s = tagged_negative(tagged_vectors, j) ? n - 1 - neg++ : pos++;
        w[j] = (r[s] - h[s]) / factor;
    }
    return w;
}

// Offsets for a canonically paired skew spectrum. Throws if the padded
// watermark spectrum would break the host's conjugate pairing.
std::vector<double> skew_offsets(std::span<const double> wm_imag, std::size_t n, double factor)
{
    std::vector<double> delta = pad_spectrum(wm_imag, n);
    for (double& d : delta) d *= factor;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        if (delta[k] != -delta[k + 1]) throw std::runtime_error("embed: skew spectra are not conjugate-paired");
    }
    if (n % 2 == 1 && delta[n - 1] != 0.0) throw std::runtime_error("embed: skew spectrum pairing failure");
    return delta;
}

RealMatrix symmetric_perturbation(const RealMatrix& vectors, std::span<const double> delta)
{
    return symmetric_part(scale_columns_product(vectors, delta, vectors));
}

RealMatrix skew_perturbation(const ComplexMatrix& vectors, std::span<const double> delta_imag)
{
    std::vector<Complex> d(delta_imag.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = Complex(0.0, delta_imag[k]);
    return skew_part(real_part(scale_columns_product(vectors, d)));
}

// Y = X with the strict lower triangle moved by 2*dS and the diagonal by
// dS: the host's strict upper triangle is left as is and sym(Y) = B_X + dS.
RealMatrix apply_lower_sym(const RealMatrix& x, const RealMatrix& ds)
{
    RealMatrix y = x;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        y(i, i) += ds(i, i);
        for (std::size_t j = 0; j < i; ++j) y(i, j) += 2.0 * ds(i, j);
    }
    return y;
}

// Y = X with the strict lower triangle moved by 2*dC; skew(Y) = C_X + dC.
RealMatrix apply_lower_skew(const RealMatrix& x, const RealMatrix& dc)
{
    RealMatrix y = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) y(i, j) += 2.0 * dc(i, j);
    return y;
}

std::vector<double> strict_from_upper_with_diag(std::span<const double> tri, std::size_t m)
{
    std::vector<double> out;
    out.reserve(m * (m - 1) / 2);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
        ++k; // diagonal
        for (std::size_t j = i + 1; j < m; ++j) out.push_back(tri[k++]);
    }
    return out;
}

} // namespace

const char* method_name(Method m)
{
    switch (m) {
    case Method::sym: return "symmetric";
    case Method::skew: return "skew-symmetric";
    case Method::dual: return "dual";
    case Method::svd: return "svd";
    }
    return "unknown";
}

std::optional<Method> method_from_number(int n)
{
    if (n >= 1 && n <= 4) return static_cast<Method>(n);
    return std::nullopt;
}

Method WatermarkKey::method() const
{
    return static_cast<Method>(payload.index() + 1);
}

void WatermarkKey::validate() const
{
    const std::size_t tri = std::size_t{m} * (m + 1) / 2;
    auto fail = [&](const char* what) {
        throw std::invalid_argument(std::string("watermark key: ") + what + " does not match n=" +
                                    std::to_string(n) + ", m=" + std::to_string(m));
    };
    auto square_of = [&](const auto& mat, const char* what) {
        if (mat.rows() != m || mat.cols() != m) fail(what);
    };
    if (m == 0 || m > n) fail("watermark side");
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SymPayload>) {
                if (p.host_values.size() != n) fail("host spectrum length");
                square_of(p.wm_vectors, "watermark eigenvectors");
                if (p.wm_triangle.size() != tri) fail("watermark triangle length");
            } else if constexpr (std::is_same_v<P, SkewPayload>) {
                if (p.host_imag_values.size() != n) fail("host spectrum length");
                square_of(p.wm_vectors, "watermark eigenvectors");
                if (p.wm_triangle.size() != tri) fail("watermark triangle length");
            } else if constexpr (std::is_same_v<P, DualPayload>) {
                if (p.host_sym_values.size() != n || p.host_skew_values.size() != n) fail("host spectrum length");
                square_of(p.wm_sym_vectors, "symmetric eigenvectors");
                square_of(p.wm_skew_vectors, "skew eigenvectors");
            } else {
                if (p.host_singular.size() != n) fail("host singular values");
                square_of(p.wm_u, "left singular vectors");
                square_of(p.wm_v, "right singular vectors");
            }
        },
        payload);
}

std::vector<double> pad_spectrum(std::span<const double> values, std::size_t n)
{
    if (values.size() > n) {
        throw std::invalid_argument("pad_spectrum: " + std::to_string(values.size()) + " values do not fit in " +
                                    std::to_string(n) + " slots");
    }
    std::vector<double> out(n, 0.0);
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

SpectralEmbedder::SpectralEmbedder(RealMatrix host, RealMatrix watermark, JacobiOptions opts)
    : host_(std::move(host)), watermark_(std::move(watermark)), opts_(opts)
{
    check_inputs(host_, watermark_, 1.0);
}

const SymEigen& SpectralEmbedder::host_sym()
{
    if (!host_sym_) host_sym_ = eig_sym(symmetric_part(host_), opts_);
    return *host_sym_;
}

const SymEigen& SpectralEmbedder::wm_sym()
{
    if (!wm_sym_) wm_sym_ = eig_sym(symmetric_part(watermark_), opts_);
    return *wm_sym_;
}

const SkewEigen& SpectralEmbedder::host_skew()
{
    if (!host_skew_) host_skew_ = eig_skew(skew_part(host_), opts_);
    return *host_skew_;
}

const SkewEigen& SpectralEmbedder::wm_skew()
{
    if (!wm_skew_) wm_skew_ = eig_skew(skew_part(watermark_), opts_);
    return *wm_skew_;
}

const SvdResult& SpectralEmbedder::host_svd()
{
    if (!host_svd_) host_svd_ = svd(host_, opts_);
    return *host_svd_;
}

const SvdResult& SpectralEmbedder::wm_svd()
{
    if (!wm_svd_) wm_svd_ = svd(watermark_, opts_);
    return *wm_svd_;
}

EmbedResult SpectralEmbedder::embed(Method method, double alpha)
{
    check_inputs(host_, watermark_, alpha);
    const std::size_t n = host_.rows();
    const std::size_t m = watermark_.rows();
    WatermarkKey key{alpha, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m), {}};

    switch (method) {
    case Method::sym: {
        const auto delta = symmetric_offsets(host_sym().values, wm_sym().values, alpha);
        RealMatrix y = apply_lower_sym(host_, symmetric_perturbation(host_sym().vectors, delta));
        key.payload = SymPayload{host_sym().values, sign_tagged(wm_sym()), upper_triangle(watermark_, true)};
        return {std::move(y), std::move(key)};
    }
    case Method::skew: {
        const auto delta = skew_offsets(wm_skew().imag_values, n, alpha);
        RealMatrix y = apply_lower_skew(host_, skew_perturbation(host_skew().vectors, delta));
        key.payload = SkewPayload{host_skew().imag_values, wm_skew().vectors, upper_triangle(watermark_, true)};
        return {std::move(y), std::move(key)};
    }
    case Method::dual: {
        const double half = alpha / 2.0;
        const auto dsym = symmetric_offsets(host_sym().values, wm_sym().values, half);
        const auto dskew = skew_offsets(wm_skew().imag_values, n, half);
        RealMatrix y = host_ + symmetric_perturbation(host_sym().vectors, dsym) +
                       skew_perturbation(host_skew().vectors, dskew);
        key.payload = DualPayload{host_sym().values, host_skew().imag_values, sign_tagged(wm_sym()),
                                  wm_skew().vectors};
        return {std::move(y), std::move(key)};
    }
    case Method::svd: {
        auto delta = pad_spectrum(wm_svd().s, n);
        for (double& d : delta) d *= alpha;
        RealMatrix y = host_ + scale_columns_product(host_svd().u, delta, host_svd().v);
        key.payload = SvdPayload{host_svd().s, wm_svd().u, wm_svd().v};
        return {std::move(y), std::move(key)};
    }
    }
    throw std::invalid_argument("embed: unknown method");
}

EmbedResult embed_sym(const RealMatrix& host, const RealMatrix& watermark, double alpha)
{
    return SpectralEmbedder(host, watermark).embed(Method::sym, alpha);
}

EmbedResult embed_skew(const RealMatrix& host, const RealMatrix& watermark, double alpha)
{
    return SpectralEmbedder(host, watermark).embed(Method::skew, alpha);
}

EmbedResult embed_dual(const RealMatrix& host, const RealMatrix& watermark, double alpha)
{
    return SpectralEmbedder(host, watermark).embed(Method::dual, alpha);
}

EmbedResult embed_svd(const RealMatrix& host, const RealMatrix& watermark, double alpha)
{
    return SpectralEmbedder(host, watermark).embed(Method::svd, alpha);
}

ExtractResult extract_sym(const RealMatrix& received, const WatermarkKey& key)
{
    const auto& p = payload_of<SymPayload>(key, Method::sym);
    check_received(received, key);
    const std::vector<double> recv = eigvals_sym(symmetric_part(received));
    ExtractResult out;
    out.sym_spectrum = recover_symmetric(recv, p.host_values, p.wm_vectors, key.alpha);

    const RealMatrix b_w = symmetric_perturbation(p.wm_vectors, out.sym_spectrum);
    out.watermark = reconstruct_from_sym(b_w, strict_from_upper_with_diag(p.wm_triangle, key.m));
    std::size_t k = 0;
    for (std::size_t i = 0; i < key.m; ++i) {
        out.watermark(i, i) = p.wm_triangle[k];
        k += key.m - i;
    }
    return out;
}

ExtractResult extract_skew(const RealMatrix& received, const WatermarkKey& key)
{
    const auto& p = payload_of<SkewPayload>(key, Method::skew);
    check_received(received, key);
    const std::vector<double> recv = eigvals_skew(skew_part(received));
    ExtractResult out;
    out.skew_spectrum.resize(key.m);
    for (std::size_t k = 0; k < key.m; ++k) {
        out.skew_spectrum[k] = (recv[k] - p.host_imag_values[k]) / key.alpha;
    }
    const RealMatrix c_w = skew_perturbation(p.wm_vectors, out.skew_spectrum);
    out.watermark = reconstruct_from_skew(c_w, p.wm_triangle);
    return out;
}

ExtractResult extract_dual(const RealMatrix& received, const WatermarkKey& key)
{
    const auto& p = payload_of<DualPayload>(key, Method::dual);
    check_received(received, key);
    // Embedding used alpha/2 on each part, so that is the divisor here.
    const double half = key.alpha / 2.0;
    const std::vector<double> recv_sym = eigvals_sym(symmetric_part(received));
    const std::vector<double> recv_skew = eigvals_skew(skew_part(received));

    ExtractResult out;
    out.sym_spectrum = recover_symmetric(recv_sym, p.host_sym_values, p.wm_sym_vectors, half);
    out.skew_spectrum.resize(key.m);
    for (std::size_t k = 0; k < key.m; ++k) {
        out.skew_spectrum[k] = (recv_skew[k] - p.host_skew_values[k]) / half;
    }
    out.watermark = symmetric_perturbation(p.wm_sym_vectors, out.sym_spectrum) +
                    skew_perturbation(p.wm_skew_vectors, out.skew_spectrum);
    return out;
}

ExtractResult extract_svd(const RealMatrix& received, const WatermarkKey& key)
{
    const auto& p = payload_of<SvdPayload>(key, Method::svd);
    check_received(received, key);
    const std::vector<double> recv = singular_values(received);
    ExtractResult out;
    out.singular_spectrum.resize(key.m);
    for (std::size_t k = 0; k < key.m; ++k) {
        out.singular_spectrum[k] = (recv[k] - p.host_singular[k]) / key.alpha;
    }
    out.watermark = scale_columns_product(p.wm_u, out.singular_spectrum, p.wm_v);
    return out;
}

ExtractResult extract(const RealMatrix& received, const WatermarkKey& key)
{
    switch (key.method()) {
    case Method::sym: return extract_sym(received, key);
    case Method::skew: return extract_skew(received, key);
    case Method::dual: return extract_dual(received, key);
    case Method::svd: return extract_svd(received, key);
    }
    throw std::invalid_argument("extract: unknown method");
}

EmbedOutput block_apply(const RealMatrix& host, const RealMatrix& watermark, Method method, double alpha)
{
    if (!host.square() || !watermark.square() || watermark.rows() == 0) {
        throw std::invalid_argument("block embed: images must be square");
    }
    const std::size_t n = host.rows();
    const std::size_t m = watermark.rows();
    if (n % m != 0) {
        throw std::invalid_argument("block embed: host side " + std::to_string(n) +
                                    " is not divisible by watermark side " + std::to_string(m));
    }
    const std::size_t grid = n / m;
    EmbedOutput out{host, {}};
    out.keys.reserve(grid * grid);
    for (std::size_t bi = 0; bi < grid; ++bi) {
        for (std::size_t bj = 0; bj < grid; ++bj) {
            RealMatrix block(m, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) block(i, j) = host(bi * m + i, bj * m + j);
            EmbedResult r = SpectralEmbedder(std::move(block), watermark).embed(method, alpha);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) out.watermarked(bi * m + i, bj * m + j) = r.watermarked(i, j);
            out.keys.push_back(std::move(r.key));
        }
    }
    return out;
}

EmbedOutput embed(const RealMatrix& host, const RealMatrix& watermark, const EmbedConfig& config)
{
    EmbedOutput out;
    if (config.size_mode == SizeMode::block) {
        out = block_apply(host, watermark, config.method, config.alpha);
    } else {
        EmbedResult r = SpectralEmbedder(host, watermark).embed(config.method, config.alpha);
        out.watermarked = std::move(r.watermarked);
        out.keys.push_back(std::move(r.key));
    }
    if (config.quantize_output) out.watermarked = to_real(quantize_u8(out.watermarked));
    return out;
}

ExtractResult extract(const RealMatrix& received, std::span<const WatermarkKey> keys)
{
    if (keys.empty()) throw std::invalid_argument("extract: no keys");
    if (keys.size() == 1 && received.rows() == keys[0].n) return extract(received, keys[0]);

    const std::size_t m = keys[0].m;
    const std::size_t block = keys[0].n;
    const auto grid = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(keys.size()))));
    if (grid * grid != keys.size() || block != m || !received.square() || received.rows() != grid * block) {
        throw std::invalid_argument("extract: " + std::to_string(keys.size()) + " block keys of side " +
                                    std::to_string(block) + " do not tile a " + std::to_string(received.rows()) +
                                    "-pixel image");
    }
    ExtractResult out;
    out.watermark = RealMatrix(m, m);
    for (std::size_t bi = 0; bi < grid; ++bi) {
        for (std::size_t bj = 0; bj < grid; ++bj) {
            const WatermarkKey& key = keys[bi * grid + bj];
            if (key.n != block || key.m != m) throw std::invalid_argument("extract: block keys disagree in size");
            RealMatrix sub(block, block);
            for (std::size_t i = 0; i < block; ++i)
                for (std::size_t j = 0; j < block; ++j) sub(i, j) = received(bi * block + i, bj * block + j);
            out.watermark = out.watermark + extract(sub, key).watermark;
        }
    }
    out.watermark = (1.0 / static_cast<double>(keys.size())) * out.watermark;
    return out;
}

} // namespace nmwm
