#include "vru/datapipe/types.hpp"

#include <stdexcept>

namespace vru::datapipe {

std::string to_string(Gait v) { return v == Gait::kWalking ? "walking" : "standing"; }
std::string to_string(Attention v) { return v == Attention::kLooking ? "looking" : "not_looking"; }
std::string to_string(Orientation v) {
  switch (v) {
    case Orientation::kLeft: return "left";
    case Orientation::kRight: return "right";
    case Orientation::kFront: return "front";
    default: return "back";
  }
}
std::string to_string(Distraction v) {
  return v == Distraction::kPhoning ? "phoning" : "not_phoning";
}
std::string to_string(Crossing v) { return v == Crossing::kCrossing ? "crossing" : "not_crossing"; }

namespace {
[[noreturn]] void bad_label(const char* field, const std::string& value) {
  throw std::invalid_argument(std::string("unknown ") + field + " label: '" + value + "'");
}
}  // namespace

Gait gait_from_string(const std::string& s) {
  if (s == "walking") return Gait::kWalking;
  if (s == "standing") return Gait::kStanding;
  bad_label("gait", s);
}

Attention attention_from_string(const std::string& s) {
  if (s == "looking") return Attention::kLooking;
  if (s == "not_looking") return Attention::kNotLooking;
  bad_label("attention", s);
}

Orientation orientation_from_string(const std::string& s) {
  if (s == "left") return Orientation::kLeft;
  if (s == "right") return Orientation::kRight;
  if (s == "front") return Orientation::kFront;
  if (s == "back") return Orientation::kBack;
  bad_label("orientation", s);
}

Distraction distraction_from_string(const std::string& s) {
  if (s == "phoning") return Distraction::kPhoning;
  if (s == "not_phoning") return Distraction::kNotPhoning;
  bad_label("distraction", s);
}

Crossing crossing_from_string(const std::string& s) {
  if (s == "crossing") return Crossing::kCrossing;
  if (s == "not_crossing") return Crossing::kNotCrossing;
  bad_label("crossing", s);
}

}  // namespace vru::datapipe
