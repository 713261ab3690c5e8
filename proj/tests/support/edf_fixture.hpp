// Builds minimal EDF byte streams for parser tests.
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace edf_fixture {

struct SignalSpec {
    std::string label = "EEG Cz";
    std::string dimension = "uV";
    double phys_min = -1000.0;
    double phys_max = 1000.0;
    int dig_min = -32768;
    int dig_max = 32767;
    int samples_per_record = 2;
    std::vector<std::int16_t> samples;  // n_records * samples_per_record values
};

struct FileSpec {
    std::string version = "0";
    std::string patient = "X X X X";
    std::string recording = "Startdate 01-JAN-2000";
    std::string start_date = "01.01.00";
    std::string start_time = "00.00.00";
    long n_records = 1;
    double record_dur_s = 1.0;
    std::vector<SignalSpec> signals;
};

inline void put_field(std::string& out, const std::string& value, std::size_t width) {
    std::string v = value.substr(0, width);
    v.resize(width, ' ');
    out += v;
}

inline std::string build_bytes(const FileSpec& spec) {
    const int ns = static_cast<int>(spec.signals.size());
    std::string out;
    put_field(out, spec.version, 8);
    put_field(out, spec.patient, 80);
    put_field(out, spec.recording, 80);
    put_field(out, spec.start_date, 8);
    put_field(out, spec.start_time, 8);
    put_field(out, std::to_string(256 * (1 + ns)), 8);
    put_field(out, "", 44);
    put_field(out, std::to_string(spec.n_records), 8);
    {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%g", spec.record_dur_s);
        put_field(out, buf, 8);
    }
    put_field(out, std::to_string(ns), 4);

    auto each = [&](auto&& fn, std::size_t width) {
        for (const SignalSpec& s : spec.signals) put_field(out, fn(s), width);
    };
    each([](const SignalSpec& s) { return s.label; }, 16);
    each([](const SignalSpec&) { return std::string("test transducer"); }, 80);
    each([](const SignalSpec& s) { return s.dimension; }, 8);
    each([](const SignalSpec& s) {
        char b[16];
        std::snprintf(b, sizeof b, "%g", s.phys_min);
        return std::string(b);
    }, 8);
    each([](const SignalSpec& s) {
        char b[16];
        std::snprintf(b, sizeof b, "%g", s.phys_max);
        return std::string(b);
    }, 8);
    each([](const SignalSpec& s) { return std::to_string(s.dig_min); }, 8);
    each([](const SignalSpec& s) { return std::to_string(s.dig_max); }, 8);
    each([](const SignalSpec&) { return std::string("HP:0.1Hz"); }, 80);
    each([](const SignalSpec& s) { return std::to_string(s.samples_per_record); }, 8);
    each([](const SignalSpec&) { return std::string(); }, 32);

    for (long r = 0; r < spec.n_records; ++r) {
        for (const SignalSpec& s : spec.signals) {
            for (int i = 0; i < s.samples_per_record; ++i) {
                const std::size_t idx = static_cast<std::size_t>(r) *
                                            static_cast<std::size_t>(s.samples_per_record) +
                                        static_cast<std::size_t>(i);
                const std::int16_t v = idx < s.samples.size() ? s.samples[idx] : 0;
                out += static_cast<char>(static_cast<std::uint16_t>(v) & 0xff);
                out += static_cast<char>((static_cast<std::uint16_t>(v) >> 8) & 0xff);
            }
        }
    }
    return out;
}

inline void write_file(const std::string& path, const FileSpec& spec) {
    std::ofstream f(path, std::ios::binary);
    const std::string bytes = build_bytes(spec);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace edf_fixture
