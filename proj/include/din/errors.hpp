#pragma once

#include <stdexcept>
#include <string>

namespace din {

// Base for every failure this library raises deliberately.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Session / staircase
class FirstTripletFailure : public Error {
public:
  explicit FirstTripletFailure(const std::string& what) : Error(what) {}
};
class IncompleteSession : public Error {
public:
  explicit IncompleteSession(const std::string& what) : Error(what) {}
};
class AudioDeviceError : public Error {
public:
  explicit AudioDeviceError(const std::string& what) : Error(what) {}
};

// ASR bridge
class AsrUnavailable : public Error {
public:
  explicit AsrUnavailable(const std::string& what) : Error(what) {}
};
class AsrTimeout : public Error {
public:
  explicit AsrTimeout(const std::string& what) : Error(what) {}
};
class AsrOutputUnparseable : public Error {
public:
  explicit AsrOutputUnparseable(const std::string& what) : Error(what) {}
};

// Stimuli / audio
class MissingAsset : public Error {
public:
  explicit MissingAsset(const std::string& what) : Error(what) {}
};
class ClippingAfterGain : public Error {
public:
  explicit ClippingAfterGain(const std::string& what) : Error(what) {}
};
class WrongSampleRate : public Error {
public:
  explicit WrongSampleRate(const std::string& what) : Error(what) {}
};
class TooShort : public Error {
public:
  explicit TooShort(const std::string& what) : Error(what) {}
};
class MalformedWav : public Error {
public:
  explicit MalformedWav(const std::string& what) : Error(what) {}
};
class UnsupportedFormat : public Error {
public:
  explicit UnsupportedFormat(const std::string& what) : Error(what) {}
};

// Evaluation / simulation
class EmptyReference : public Error {
public:
  explicit EmptyReference(const std::string& what) : Error(what) {}
};
class EmptyModel : public Error {
public:
  explicit EmptyModel(const std::string& what) : Error(what) {}
};
class DegenerateGroup : public Error {
public:
  explicit DegenerateGroup(const std::string& what) : Error(what) {}
};
class EmptySamples : public Error {
public:
  explicit EmptySamples(const std::string& what) : Error(what) {}
};

// Configuration (CLI exit code 2)
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace din
