#include "cbd/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cbd/csv.hpp"

namespace cbd {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
    try {
        size_t pos;
        double d = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& v, int line) {
    try {
        size_t pos;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in integer '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(line, "expected an integer, got '" + v + "'");
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'section.key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) fail(lineno, "empty key or value");

        if (key == "source.type") {
            if (val != "markov" && val != "iid") fail(lineno, "source.type must be markov|iid");
            cfg.source_type = val;
        } else if (key == "source.p_s") {
            cfg.source_p_s = parse_double(val, lineno);
        } else if (key == "channel.type") {
            if (val != "bsc" && val != "bec") fail(lineno, "channel.type must be bsc|bec");
            cfg.channel_type = val;
        } else if (key == "channel.p") {
            cfg.channel_p = parse_double(val, lineno);
        } else if (key == "loss.type") {
            if (val != "hamming" && val != "mse") fail(lineno, "loss.type must be hamming|mse");
            cfg.loss_type = val;
        } else if (key == "run.n") {
            cfg.n = static_cast<int>(parse_int(val, lineno));
        } else if (key == "run.k") {
            cfg.k = static_cast<int>(parse_int(val, lineno));
        } else if (key == "run.rate_slack_bits") {
            cfg.rate_slack_bits = parse_double(val, lineno);
        } else if (key == "run.trials") {
            cfg.trials = static_cast<int>(parse_int(val, lineno));
        } else if (key == "run.seed") {
            cfg.seed = static_cast<uint64_t>(parse_int(val, lineno));
        } else if (key == "run.threads") {
            cfg.threads = static_cast<int>(parse_int(val, lineno));
        } else if (key == "output.path") {
            cfg.output_path = val;
        } else if (key == "check.rd_tol_bits_k1") {
            cfg.check_rd_tol_bits_k1 = parse_double(val, lineno);
        } else if (key == "check.rd_tol_bits_k2") {
            cfg.check_rd_tol_bits_k2 = parse_double(val, lineno);
        } else if (key == "check.achiever_tv") {
            cfg.check_achiever_tv = parse_double(val, lineno);
        } else if (key == "check.mixing_kmax") {
            cfg.check_mixing_kmax = static_cast<int>(parse_int(val, lineno));
        } else if (key == "check.mixing_r2") {
            cfg.check_mixing_r2 = parse_double(val, lineno);
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.source_type == "markov" && !(cfg.source_p_s > 0.0 && cfg.source_p_s < 0.5))
        throw ConfigError("config: source.p_s must lie in (0, 0.5)");
    if (cfg.channel_type == "bsc" && !(cfg.channel_p >= 0.0 && cfg.channel_p <= 1.0))
        throw ConfigError("config: channel.p must lie in [0, 1] for bsc");
    if (cfg.channel_type == "bec" && !(cfg.channel_p >= 0.0 && cfg.channel_p < 1.0))
        throw ConfigError("config: channel.p must lie in [0, 1) for bec");
    if (cfg.k < 0) throw ConfigError("config: run.k must be >= 0");
    if (cfg.n <= 2 * cfg.k) throw ConfigError("config: run.n must exceed 2*run.k");
    if (cfg.trials < 1) throw ConfigError("config: run.trials must be >= 1");
    if (cfg.threads < 1) throw ConfigError("config: run.threads must be >= 1");
    if (cfg.check_mixing_kmax < 1) throw ConfigError("config: check.mixing_kmax must be >= 1");
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "source.type = " << cfg.source_type << "\n";
    out << "source.p_s = " << format_sig(cfg.source_p_s) << "\n";
    out << "channel.type = " << cfg.channel_type << "\n";
    out << "channel.p = " << format_sig(cfg.channel_p) << "\n";
    out << "loss.type = " << cfg.loss_type << "\n";
    out << "run.n = " << cfg.n << "\n";
    out << "run.k = " << cfg.k << "\n";
    out << "run.rate_slack_bits = " << format_sig(cfg.rate_slack_bits) << "\n";
    out << "run.trials = " << cfg.trials << "\n";
    out << "run.seed = " << cfg.seed << "\n";
    out << "run.threads = " << cfg.threads << "\n";
    if (!cfg.output_path.empty()) out << "output.path = " << cfg.output_path << "\n";
    out << "check.rd_tol_bits_k1 = " << format_sig(cfg.check_rd_tol_bits_k1) << "\n";
    out << "check.rd_tol_bits_k2 = " << format_sig(cfg.check_rd_tol_bits_k2) << "\n";
    out << "check.achiever_tv = " << format_sig(cfg.check_achiever_tv) << "\n";
    out << "check.mixing_kmax = " << cfg.check_mixing_kmax << "\n";
    out << "check.mixing_r2 = " << format_sig(cfg.check_mixing_r2) << "\n";
    return out.str();
}

}  // namespace cbd
