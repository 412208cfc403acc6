#include "cli.hpp"

#include <CLI11.hpp>

#include <cstring>
#include <iostream>

#include "bench.hpp"
#include "nmwm/attacks.hpp"
#include "nmwm/codec.hpp"
#include "nmwm/imageio.hpp"
#include "nmwm/metrics.hpp"
#include "nmwm/synth.hpp"

namespace nmwm::cli {

namespace {

using Path = std::filesystem::path;

struct EmbedArgs {
    int method = 3;
    double alpha = 0;
    Path host, watermark, out, key, exact;
    bool block = false;
};

struct ExtractArgs {
    Path key, in, out, exact;
};

struct AttackArgs {
    std::string kind;
    Path in, out;
    int quality = 75;
    double sigma = 5.0;
    double density = 0.01;
    std::size_t size = 0;
    int window = 3;
    double low = 1.0, high = 99.0;
    std::uint64_t seed = 0;
};

struct MetricArgs {
    bool psnr = false, ber = false, mse = false;
    std::vector<Path> files;
};

struct BenchArgs {
    Path hosts, watermark, out, ber_out;
    std::string alphas = "0.2:0.2:2.0";
    std::string methods = "1,2,3,4";
    std::string attacks;
    double ber_alpha = 1.0;
    std::uint64_t seed = 0;
    bool quantized = false;
};

struct GenerateArgs {
    std::string kind = "natural";
    std::size_t rows = 256, cols = 0;
    std::uint64_t seed = 0;
    Path out;
};

bool has_magic(const Bytes& b, const char* magic)
{
    return b.size() >= 4 && std::memcmp(b.data(), magic, 4) == 0;
}

// Float images are detected by magic; anything else must be a PGM.
RealMatrix load_image(const Path& p)
{
    const Bytes b = read_file(p);
    if (has_magic(b, "NMIF")) return read_float_image(b);
    return to_real(read_pgm(b));
}

void save_pgm(const Path& p, const ImageU8& img) { write_file(p, write_pgm(img)); }

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

int do_embed(const EmbedArgs& a, std::ostream&)
{
    const auto method = method_from_number(a.method);
    EmbedConfig cfg;
    cfg.method = *method;
    cfg.alpha = a.alpha;
    cfg.size_mode = a.block ? SizeMode::block : SizeMode::spectral_pad;
    cfg.quantize_output = false;
    const EmbedOutput r = embed(load_image(a.host), load_image(a.watermark), cfg);
    save_pgm(a.out, quantize_u8(r.watermarked));
    write_file(a.key, write_keys(r.keys));
    if (!a.exact.empty()) write_file(a.exact, write_float_image(r.watermarked));
    return kOk;
}

int do_extract(const ExtractArgs& a, std::ostream&)
{
    const std::vector<WatermarkKey> keys = read_keys(read_file(a.key));
    const ExtractResult r = extract(load_image(a.in), keys);
    save_pgm(a.out, quantize_u8(r.watermark));
    if (!a.exact.empty()) write_file(a.exact, write_float_image(r.watermark));
    return kOk;
}

int do_attack(const AttackArgs& a, std::ostream&)
{
    AttackSpec spec;
    spec.kind = *attack_kind_from_name(a.kind);
    spec.window = a.window;
    spec.quality = a.quality;
    spec.sigma = a.sigma;
    spec.density = a.density;
    spec.low_pct = a.low;
    spec.high_pct = a.high;
    spec.seed = a.seed;
    const ImageU8 img = read_pgm(read_file(a.in));
    spec.intermediate_size = a.size == 0 ? img.rows() : a.size;
    save_pgm(a.out, apply_attack(img, spec));
    return kOk;
}

int do_metric(const MetricArgs& a, std::ostream& out)
{
    const ImageU8 x = read_pgm(read_file(a.files[0]));
    const ImageU8 y = read_pgm(read_file(a.files[1]));
    double v = 0;
    if (a.psnr) v = psnr(x, y);
    else if (a.ber) v = ber(x, y);
    else v = mse(x, y);
    out << format_number(v, 5) << "\n";
    return kOk;
}

int do_bench(const BenchArgs& a, std::ostream& out)
{
    const std::vector<double> alphas = parse_alphas(a.alphas);
    const std::vector<Method> methods = parse_methods(a.methods);
    const std::vector<NamedImage> hosts = load_hosts(a.hosts);
    const ImageU8 watermark = read_pgm(read_file(a.watermark));

    std::vector<PsnrRow> rows = psnr_table(hosts, watermark, methods, alphas, a.quantized);
    for (auto& r : rows) r.host = csv_field(r.host);
    const std::string csv = format_psnr_csv(rows);
    write_file(a.out, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
    out << rows.size() << " psnr rows -> " << a.out.string() << "\n";

    if (!a.ber_out.empty()) {
        const ImageU8& host = hosts.front().image;
        std::vector<BenchAttack> attacks = standard_attacks(host.rows(), a.seed);
        if (!a.attacks.empty() && a.attacks != "all") {
            std::vector<BenchAttack> chosen;
            std::stringstream in(a.attacks);
            std::string id;
            while (std::getline(in, id, ',')) {
                auto it = std::find_if(attacks.begin(), attacks.end(),
                                       [&](const BenchAttack& b) { return b.id == id; });
                if (it == attacks.end()) throw std::invalid_argument("unknown attack '" + id + "'");
                chosen.push_back(*it);
            }
            attacks = chosen;
        }
        const auto ber_rows = ber_table(host, watermark, methods, attacks, a.ber_alpha);
        const std::string ber_csv = format_ber_csv(ber_rows);
        write_file(a.ber_out, std::span(reinterpret_cast<const std::uint8_t*>(ber_csv.data()), ber_csv.size()));
        out << ber_rows.size() << " ber rows (host " << hosts.front().id << ") -> " << a.ber_out.string() << "\n";
    }
    return kOk;
}

int do_generate(const GenerateArgs& a, std::ostream&)
{
    const std::size_t cols = a.cols == 0 ? a.rows : a.cols;
    ImageU8 img;
    if (a.kind == "natural") img = natural_image(a.rows, cols, a.seed);
    else if (a.kind == "uniform") img = uniform_image(a.rows, cols, a.seed);
    else img = emblem_image(a.rows, a.seed);
    save_pgm(a.out, img);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Image watermarking with eigendecompositions of normal matrices", "nmwm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "nmwm 0.1.0");

    EmbedArgs ea;
    auto* embed_cmd = app.add_subcommand("embed", "Embed a watermark into a host image");
    embed_cmd->add_option("--method", ea.method, "1 symmetric, 2 skew-symmetric, 3 dual, 4 SVD")
        ->required()
        ->check(CLI::Range(1, 4));
    embed_cmd->add_option("--alpha", ea.alpha, "Scaling factor")->required()->check(CLI::PositiveNumber);
    embed_cmd->add_option("--host", ea.host, "Host image (PGM)")->required()->check(CLI::ExistingFile);
    embed_cmd->add_option("--watermark", ea.watermark, "Watermark image (PGM)")->required()->check(CLI::ExistingFile);
    embed_cmd->add_option("--out", ea.out, "Watermarked image (PGM)")->required();
    embed_cmd->add_option("--key", ea.key, "Key file")->required();
    embed_cmd->add_option("--exact", ea.exact, "Also write the unquantized image (NMIF)");
    embed_cmd->add_flag("--block", ea.block, "Embed the watermark into every block of the host");

    ExtractArgs xa;
    auto* extract_cmd = app.add_subcommand("extract", "Extract a watermark with its key");
    extract_cmd->add_option("--key", xa.key, "Key file")->required()->check(CLI::ExistingFile);
    extract_cmd->add_option("--in", xa.in, "Received image (PGM or NMIF)")->required()->check(CLI::ExistingFile);
    extract_cmd->add_option("--out", xa.out, "Extracted watermark (PGM)")->required();
    extract_cmd->add_option("--exact", xa.exact, "Also write the unquantized estimate (NMIF)");

    AttackArgs aa;
    auto* attack_cmd = app.add_subcommand("attack", "Apply a distortion to an image");
    std::vector<std::string> kinds;
    for (auto k : {AttackKind::median, AttackKind::gaussian_lp, AttackKind::average, AttackKind::wiener,
                   AttackKind::jpeg, AttackKind::awgn, AttackKind::salt_pepper, AttackKind::resize,
                   AttackKind::intensity})
        kinds.emplace_back(attack_name(k));
    attack_cmd->add_option("--kind", aa.kind, "Attack kind")->required()->check(CLI::IsMember(kinds));
    attack_cmd->add_option("--in", aa.in, "Input image (PGM)")->required()->check(CLI::ExistingFile);
    attack_cmd->add_option("--out", aa.out, "Output image (PGM)")->required();
    attack_cmd->add_option("--quality", aa.quality, "JPEG quality")->check(CLI::Range(1, 100));
    attack_cmd->add_option("--sigma", aa.sigma, "AWGN standard deviation in gray levels")
        ->check(CLI::NonNegativeNumber);
    attack_cmd->add_option("--density", aa.density, "Salt and pepper density")->check(CLI::Range(0.0, 1.0));
    attack_cmd->add_option("--size", aa.size, "Intermediate rows for resize")->check(CLI::Range(2, 1 << 16));
    attack_cmd->add_option("--window", aa.window, "Filter window (odd)")->check(CLI::Range(3, 99));
    attack_cmd->add_option("--low", aa.low, "Low percentile for intensity")->check(CLI::Range(0.0, 100.0));
    attack_cmd->add_option("--high", aa.high, "High percentile for intensity")->check(CLI::Range(0.0, 100.0));
    attack_cmd->add_option("--seed", aa.seed, "Noise seed");

    MetricArgs ma;
    auto* metric_cmd = app.add_subcommand("metric", "Compare two PGM images");
    auto* f_psnr = metric_cmd->add_flag("--psnr", ma.psnr, "Peak signal-to-noise ratio in dB");
    auto* f_ber = metric_cmd->add_flag("--ber", ma.ber, "Bit error rate in percent");
    auto* f_mse = metric_cmd->add_flag("--mse", ma.mse, "Mean squared error");
    f_psnr->excludes(f_ber)->excludes(f_mse);
    f_ber->excludes(f_mse);
    metric_cmd->add_option("files", ma.files, "Two PGM images")->required()->expected(2)->check(CLI::ExistingFile);
    metric_cmd->callback([&] {
        if (!ma.psnr && !ma.ber && !ma.mse) throw CLI::RequiredError("one of --psnr, --ber, --mse");
    });

    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "PSNR and BER tables over hosts, methods and strengths");
    bench_cmd->add_option("--hosts", ba.hosts, "Directory of host PGMs")->required()->check(CLI::ExistingDirectory);
    bench_cmd->add_option("--watermark", ba.watermark, "Watermark PGM")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--alphas", ba.alphas, "start:step:end or comma list")->capture_default_str();
    bench_cmd->add_option("--methods", ba.methods, "Comma list of methods")->capture_default_str();
    bench_cmd->add_option("--out", ba.out, "PSNR CSV")->required();
    bench_cmd->add_option("--attacks", ba.attacks, "'all' or a comma list of attack ids");
    auto* ber_out = bench_cmd->add_option("--ber-out", ba.ber_out, "BER CSV (first host)");
    bench_cmd->add_option("--ber-alpha", ba.ber_alpha, "Scaling factor for the BER table")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", ba.seed, "Seed for randomized attacks");
    bench_cmd->add_flag("--quantized", ba.quantized, "Measure PSNR after 8-bit quantization");
    bench_cmd->get_option("--attacks")->needs(ber_out);

    GenerateArgs ga;
    auto* gen_cmd = app.add_subcommand("generate", "Write a seeded synthetic test image");
    gen_cmd->add_option("--kind", ga.kind, "natural, uniform or emblem")
        ->check(CLI::IsMember({"natural", "uniform", "emblem"}))
        ->capture_default_str();
    gen_cmd->add_option("--rows", ga.rows, "Rows (side for emblem)")
        ->check(CLI::Range(1, 1 << 14))
        ->capture_default_str();
    gen_cmd->add_option("--cols", ga.cols, "Columns (default: rows)")->check(CLI::Range(0, 1 << 14));
    gen_cmd->add_option("--seed", ga.seed, "Seed");
    gen_cmd->add_option("--out", ga.out, "Output PGM")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*embed_cmd) return do_embed(ea, out);
        if (*extract_cmd) return do_extract(xa, out);
        if (*attack_cmd) return do_attack(aa, out);
        if (*metric_cmd) return do_metric(ma, out);
        if (*bench_cmd) return do_bench(ba, out);
        if (*gen_cmd) return do_generate(ga, out);
    } catch (const std::exception& e) {
        err << "nmwm: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

} // namespace nmwm::cli
