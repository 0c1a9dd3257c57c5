# core/config.py
# Tải các thiết lập: thư mục cache, ngân sách thời gian, vành hệ số mặc định
import os
import sys
from dotenv import load_dotenv

# Tải các biến môi trường từ file .env ở thư mục gốc
load_dotenv()


def _flag(name: str, default: str) -> bool:
    return os.environ.get(name, default).strip().lower() not in ("0", "false", "no", "off", "")


class Config:
    """
    Lớp Cấu hình (Config) chứa tất cả các thiết lập của dự án.
    Mọi giá trị đều có thể ghi đè bằng biến môi trường hoặc file .env;
    các cờ dòng lệnh của msym.py lại ghi đè lên Config.
    """

    # === THƯ MỤC DỮ LIỆU ===

    # Bảng P_{h,k} và kết quả viết lại (rewrite) được lưu ở đây giữa các lần chạy
    CACHE_DIR = os.environ.get("MSYM_CACHE_DIR", "data/cache")

    # Báo cáo chứng nhận (CSV/JSON) của lệnh verify
    REPORT_DIR = os.environ.get("MSYM_REPORT_DIR", "data/reports")

    # === VÀNH HỆ SỐ ===

    # z | q | fp:<p>
    DEFAULT_COEFF = os.environ.get("MSYM_COEFF", "z")

    # === CHỨNG NHẬN (VERIFY) ===

    # Ngân sách thời gian cho mỗi trường hợp (giây)
    CASE_BUDGET_SECONDS = float(os.environ.get("MSYM_CASE_BUDGET", "60"))

    # Số luồng chạy song song các trường hợp độc lập
    WORKERS = int(os.environ.get("MSYM_WORKERS", "1"))

    # Thăm dò span quan hệ: hạt giống cố định để kết quả tái lập được
    PROBE_SEED = int(os.environ.get("MSYM_PROBE_SEED", "20240601"))
    PROBE_LIMIT = int(os.environ.get("MSYM_PROBE_LIMIT", "4096"))

    # Số cặp ngẫu nhiên (alpha, beta) cho bộ kiểm tra công thức tích
    PRODUCT_PAIRS = int(os.environ.get("MSYM_PRODUCT_PAIRS", "200"))

    # In thông báo tiến trình ([Cache], [Verify], ...) ra stderr
    VERBOSE = _flag("MSYM_VERBOSE", "1")


def log(tag: str, message: str) -> None:
    """In một dòng thông báo có nhãn ("[Cache] ...") ra stderr; stdout chỉ dành cho kết quả."""
    if Config.VERBOSE:
        print(f"[{tag}] {message}", file=sys.stderr)
