#include "centro/edf.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace centro {

namespace {

std::string trim(const std::string& s) {
    const std::size_t first = s.find_first_not_of(' ');
    if (first == std::string::npos)
        return "";
    const std::size_t last = s.find_last_not_of(' ');
    return s.substr(first, last - first + 1);
}

struct FieldReader {
    const std::string& buf;
    std::size_t pos = 0;

    std::string take(std::size_t width, const char* name) {
        if (pos + width > buf.size())
            throw std::runtime_error("edf: header ends inside field '" + std::string(name) +
                                     "' at offset " + std::to_string(pos));
        std::string raw = buf.substr(pos, width);
        pos += width;
        return trim(raw);
    }

    long take_long(std::size_t width, const char* name) {
        const std::size_t at = pos;
        const std::string s = take(width, name);
        try {
            std::size_t used = 0;
            const long v = std::stol(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error("edf: field '" + std::string(name) + "' at offset " +
                                     std::to_string(at) + " is not an integer: '" + s + "'");
        }
    }

    double take_double(std::size_t width, const char* name) {
        const std::size_t at = pos;
        const std::string s = take(width, name);
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error("edf: field '" + std::string(name) + "' at offset " +
                                     std::to_string(at) + " is not a number: '" + s + "'");
        }
    }
};

}  // namespace

EdfRecording read_edf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("edf: cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (bytes.size() < 256)
        throw std::runtime_error("edf: file shorter than the 256-byte fixed header");

    EdfRecording rec;
    EdfHeader& hdr = rec.header;
    FieldReader fixed{bytes, 0};
    hdr.version = fixed.take(8, "version");
    hdr.patient = fixed.take(80, "patient");
    hdr.recording = fixed.take(80, "recording");
    hdr.start_date = fixed.take(8, "start date");
    hdr.start_time = fixed.take(8, "start time");
    hdr.header_bytes = fixed.take_long(8, "header bytes");
    fixed.take(44, "reserved");
    hdr.n_records = fixed.take_long(8, "number of records");
    hdr.record_dur_s = fixed.take_double(8, "record duration");
    hdr.n_signals = static_cast<int>(fixed.take_long(4, "number of signals"));

    if (hdr.n_signals < 1)
        throw std::runtime_error("edf: number of signals must be positive");
    if (hdr.n_records < 0)
        throw std::runtime_error("edf: number of records must be non-negative");
    if (!(hdr.record_dur_s > 0.0))
        throw std::runtime_error("edf: record duration must be positive");
    const long expected_header = 256L * (1 + hdr.n_signals);
    if (hdr.header_bytes != expected_header)
        throw std::runtime_error("edf: header_bytes is " + std::to_string(hdr.header_bytes) +
                                 ", expected " + std::to_string(expected_header) + " for " +
                                 std::to_string(hdr.n_signals) + " signal(s)");
    if (bytes.size() < static_cast<std::size_t>(expected_header))
        throw std::runtime_error("edf: file shorter than the declared header");

    // Per-signal fields are stored as contiguous arrays, one field at a time.
    const int ns = hdr.n_signals;
    hdr.signals.resize(static_cast<std::size_t>(ns));
    FieldReader sig{bytes, 256};
    for (int s = 0; s < ns; ++s) hdr.signals[static_cast<std::size_t>(s)].label = sig.take(16, "label");
    for (int s = 0; s < ns; ++s)
        hdr.signals[static_cast<std::size_t>(s)].transducer = sig.take(80, "transducer");
    for (int s = 0; s < ns; ++s)
        hdr.signals[static_cast<std::size_t>(s)].dimension = sig.take(8, "dimension");
    for (int s = 0; s < ns; ++s)
        hdr.signals[static_cast<std::size_t>(s)].phys_min = sig.take_double(8, "physical minimum");
    for (int s = 0; s < ns; ++s)
        hdr.signals[static_cast<std::size_t>(s)].phys_max = sig.take_double(8, "physical maximum");
    for (int s = 0; s < ns; ++s)
        hdr.signals[static_cast<std::size_t>(s)].dig_min =
            static_cast<int>(sig.take_long(8, "digital minimum"));
    for (int s = 0; s < ns; ++s)
        hdr.signals[static_cast<std::size_t>(s)].dig_max =
            static_cast<int>(sig.take_long(8, "digital maximum"));
    for (int s = 0; s < ns; ++s)
        hdr.signals[static_cast<std::size_t>(s)].prefiltering = sig.take(80, "prefiltering");
    for (int s = 0; s < ns; ++s)
        hdr.signals[static_cast<std::size_t>(s)].samples_per_record =
            static_cast<int>(sig.take_long(8, "samples per record"));
    for (int s = 0; s < ns; ++s) sig.take(32, "signal reserved");

    long record_samples = 0;
    for (int s = 0; s < ns; ++s) {
        const EdfSignalHeader& sh = hdr.signals[static_cast<std::size_t>(s)];
        if (sh.dig_min >= sh.dig_max)
            throw std::runtime_error("edf: signal " + std::to_string(s) +
                                     ": digital range is empty (dig_min >= dig_max)");
        if (sh.phys_min == sh.phys_max)
            throw std::runtime_error("edf: signal " + std::to_string(s) +
                                     ": physical range is empty");
        if (sh.samples_per_record < 1)
            throw std::runtime_error("edf: signal " + std::to_string(s) +
                                     ": samples per record must be positive");
        record_samples += sh.samples_per_record;
    }

    const std::size_t record_bytes = static_cast<std::size_t>(record_samples) * 2;
    const std::size_t data_offset = static_cast<std::size_t>(expected_header);
    rec.traces.resize(static_cast<std::size_t>(ns));
    for (int s = 0; s < ns; ++s) {
        const EdfSignalHeader& sh = hdr.signals[static_cast<std::size_t>(s)];
        rec.traces[static_cast<std::size_t>(s)].rate_hz =
            static_cast<double>(sh.samples_per_record) / hdr.record_dur_s;
        rec.traces[static_cast<std::size_t>(s)].samples.reserve(
            static_cast<std::size_t>(hdr.n_records) * static_cast<std::size_t>(sh.samples_per_record));
    }

    std::size_t pos = data_offset;
    for (long r = 0; r < hdr.n_records; ++r) {
        if (pos + record_bytes > bytes.size())
            throw std::runtime_error("edf: record " + std::to_string(r) + " of " +
                                     std::to_string(hdr.n_records) +
                                     " truncated (file size mismatch)");
        for (int s = 0; s < ns; ++s) {
            const EdfSignalHeader& sh = hdr.signals[static_cast<std::size_t>(s)];
            const double gain =
                (sh.phys_max - sh.phys_min) / (static_cast<double>(sh.dig_max) - sh.dig_min);
            for (int i = 0; i < sh.samples_per_record; ++i) {
                const std::uint8_t lo = static_cast<std::uint8_t>(bytes[pos]);
                const std::uint8_t hi = static_cast<std::uint8_t>(bytes[pos + 1]);
                pos += 2;
                const std::int16_t dig =
                    static_cast<std::int16_t>(static_cast<std::uint16_t>(lo) |
                                              (static_cast<std::uint16_t>(hi) << 8));
                const double phys = sh.phys_min + (static_cast<double>(dig) - sh.dig_min) * gain;
                rec.traces[static_cast<std::size_t>(s)].samples.push_back(phys);
            }
        }
    }
    return rec;
}

}  // namespace centro
