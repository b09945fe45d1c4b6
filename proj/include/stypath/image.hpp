#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "stypath/common.hpp"

namespace stypath {

// RGB image, float values in [0,1], HWC layout.
struct Image {
  int height = 0;
  int width = 0;
  std::vector<float> rgb;

  Image() = default;
  Image(int h, int w) : height(h), width(w), rgb(static_cast<size_t>(h) * w * 3, 0.f) {}

  float& at(int y, int x, int c) { return rgb[(static_cast<size_t>(y) * width + x) * 3 + c]; }
  float at(int y, int x, int c) const { return rgb[(static_cast<size_t>(y) * width + x) * 3 + c]; }
  size_t size() const { return rgb.size(); }
  bool empty() const { return rgb.empty(); }
};

inline cv::Mat to_mat_8u(const Image& img) {
  cv::Mat m(img.height, img.width, CV_8UC3);
  for (int y = 0; y < img.height; ++y) {
    auto* row = m.ptr<cv::Vec3b>(y);
    for (int x = 0; x < img.width; ++x) {
      // OpenCV stores BGR.
      row[x][2] = cv::saturate_cast<uchar>(std::lround(img.at(y, x, 0) * 255.0f));
      row[x][1] = cv::saturate_cast<uchar>(std::lround(img.at(y, x, 1) * 255.0f));
      row[x][0] = cv::saturate_cast<uchar>(std::lround(img.at(y, x, 2) * 255.0f));
    }
  }
  return m;
}

inline Image from_mat_8u(const cv::Mat& m) {
  CV_Assert(m.type() == CV_8UC3);
  Image img(m.rows, m.cols);
  for (int y = 0; y < m.rows; ++y) {
    const auto* row = m.ptr<cv::Vec3b>(y);
    for (int x = 0; x < m.cols; ++x) {
      img.at(y, x, 0) = row[x][2] / 255.0f;
      img.at(y, x, 1) = row[x][1] / 255.0f;
      img.at(y, x, 2) = row[x][0] / 255.0f;
    }
  }
  return img;
}

inline cv::Mat to_mat_32f(const Image& img) {
  cv::Mat m(img.height, img.width, CV_32FC3);
  for (int y = 0; y < img.height; ++y) {
    auto* row = m.ptr<cv::Vec3f>(y);
    for (int x = 0; x < img.width; ++x) {
      row[x][2] = img.at(y, x, 0);
      row[x][1] = img.at(y, x, 1);
      row[x][0] = img.at(y, x, 2);
    }
  }
  return m;
}

inline Image from_mat_32f(const cv::Mat& m) {
  CV_Assert(m.type() == CV_32FC3);
  Image img(m.rows, m.cols);
  for (int y = 0; y < m.rows; ++y) {
    const auto* row = m.ptr<cv::Vec3f>(y);
    for (int x = 0; x < m.cols; ++x) {
      img.at(y, x, 0) = row[x][2];
      img.at(y, x, 1) = row[x][1];
      img.at(y, x, 2) = row[x][0];
    }
  }
  return img;
}

inline Image load_image(const std::filesystem::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (m.empty()) throw ValidationError("cannot read image: " + path.string());
  return from_mat_8u(m);
}

// Lossless PNG output.
inline void save_png(const std::filesystem::path& path, const Image& img) {
  if (img.empty()) throw ValidationError("refusing to save empty image: " + path.string());
  std::vector<int> params{cv::IMWRITE_PNG_COMPRESSION, 6};
  if (!cv::imwrite(path.string(), to_mat_8u(img), params))
    throw std::runtime_error("cannot write image: " + path.string());
}

inline Image resize(const Image& img, int h, int w) {
  if (img.height == h && img.width == w) return img;
  cv::Mat src = to_mat_32f(img);
  cv::Mat dst;
  const int interp = (h < img.height || w < img.width) ? cv::INTER_AREA : cv::INTER_LINEAR;
  cv::resize(src, dst, cv::Size(w, h), 0, 0, interp);
  return from_mat_32f(dst);
}

// Shrinks so the longer side is at most max_side; never upsamples.
inline Image resize_max_side(const Image& img, int max_side) {
  const int longer = std::max(img.height, img.width);
  if (max_side <= 0 || longer <= max_side) return img;
  const double s = static_cast<double>(max_side) / longer;
  int h = std::max(1, static_cast<int>(std::lround(img.height * s)));
  int w = std::max(1, static_cast<int>(std::lround(img.width * s)));
  return resize(img, h, w);
}

inline Image hflip(const Image& img) {
  Image out(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = img.at(y, img.width - 1 - x, c);
  return out;
}

inline Image vflip(const Image& img) {
  Image out(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = img.at(img.height - 1 - y, x, c);
  return out;
}

inline Image crop(const Image& img, int y0, int x0, int h, int w) {
  h = std::max(1, std::min(h, img.height - y0));
  w = std::max(1, std::min(w, img.width - x0));
  Image out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = img.at(y0 + y, x0 + x, c);
  return out;
}

// Rotation about the image center with reflected-border fill.
inline Image rotate_reflect(const Image& img, double angle_deg) {
  cv::Mat src = to_mat_32f(img);
  cv::Mat rot = cv::getRotationMatrix2D(cv::Point2f(img.width / 2.0f, img.height / 2.0f), angle_deg, 1.0);
  cv::Mat dst;
  cv::warpAffine(src, dst, rot, src.size(), cv::INTER_LINEAR, cv::BORDER_REFLECT_101);
  return from_mat_32f(dst);
}

inline double max_abs_diff(const Image& a, const Image& b) {
  if (a.height != b.height || a.width != b.width) throw ValidationError("image shape mismatch");
  double m = 0.0;
  for (size_t i = 0; i < a.rgb.size(); ++i) m = std::max(m, std::abs(double(a.rgb[i]) - double(b.rgb[i])));
  return m;
}

}  // namespace stypath
