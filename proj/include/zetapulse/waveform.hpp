#pragma once

#include <cmath>

namespace zetapulse {

// Closed-form scalar of time with exact first and second derivatives:
//     value(t) = offset + amplitude * sin(freq_mult * pi * t / period)
// Covers every envelope and phase family used by the scenarios (constant,
// sine-modulated envelope, sin(2*pi*t/T) phase sweep).
class Waveform {
  public:
    Waveform() = default;

    static Waveform constant(double value) { return Waveform(value, 0.0, 0.0, 1.0); }

    static Waveform sine(double offset, double amplitude, double freq_mult, double period) {
        return Waveform(offset, amplitude, freq_mult, period);
    }

    double value(double t) const {
        return offset_ + amplitude_ * std::sin(omega_ * t);
    }
    double d1(double t) const {
        return amplitude_ * omega_ * std::cos(omega_ * t);
    }
    double d2(double t) const {
        return -amplitude_ * omega_ * omega_ * std::sin(omega_ * t);
    }

    bool is_constant() const { return amplitude_ == 0.0; }
    double offset() const { return offset_; }
    double amplitude() const { return amplitude_; }
    double freq_mult() const { return freq_mult_; }
    double period() const { return period_; }

  private:
    Waveform(double offset, double amplitude, double freq_mult, double period)
        : offset_(offset), amplitude_(amplitude), freq_mult_(freq_mult), period_(period),
          omega_(freq_mult * M_PI / period) {}

    double offset_ = 0.0;
    double amplitude_ = 0.0;
    double freq_mult_ = 0.0;
    double period_ = 1.0;
    double omega_ = 0.0;
};

}  // namespace zetapulse
