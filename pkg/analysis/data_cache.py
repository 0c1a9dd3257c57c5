# analysis/data_cache.py
"""
Module quản lý lưu trữ bảng P_{h,k} và kết quả viết lại (rewrite) giữa các lần chạy,
cùng các báo cáo chứng nhận dạng CSV trong thư mục data/.

File cache là văn bản UTF-8 theo dòng:

    # msym-cache v1
    P <h> <k> <elementary-poly>
    RW <m> <orbit-index> <generator-poly>
    # checksum sha256 <hex>

Checksum tính trên các dòng bản ghi. Sai checksum thì bỏ cả file và tính lại;
dòng không đọc được thì bỏ qua dòng đó. Cache không bao giờ làm chương trình dừng.
"""
import hashlib
from datetime import datetime
from pathlib import Path

import pandas as pd

from core.config import Config, log
from core.errors import MsymError
from core.grammar import parse
from analysis.presentation import REWRITE_TABLE, RankCertificate, RewriteTable
from analysis.symfun import PLETHYSM_TABLE, PlethysmTable

CACHE_HEADER = "# msym-cache v1"
CHECKSUM_PREFIX = "# checksum sha256 "
CACHE_FILE = "msym-cache.txt"


def _checksum(records: list[str]) -> str:
    return hashlib.sha256("\n".join(records).encode("utf-8")).hexdigest()


class MsymCache:
    """
    Lớp quản lý cache của msym.
    Nạp các bảng dùng chung lúc khởi động và ghi lại khi có giá trị mới được tính.
    """

    def __init__(self, base_dir: str | Path | None = None,
                 plethysm: PlethysmTable | None = None,
                 rewrites: RewriteTable | None = None):
        self.base_dir = Path(base_dir or Config.CACHE_DIR)
        self.plethysm = plethysm if plethysm is not None else PLETHYSM_TABLE
        self.rewrites = rewrites if rewrites is not None else REWRITE_TABLE
        self.loaded_plethysm = 0
        self.loaded_rewrites = 0
        self._saved_size = (0, 0)

    @property
    def path(self) -> Path:
        return self.base_dir / CACHE_FILE

    # ========== ĐỌC ==========

    def load(self) -> bool:
        """
        Đọc file cache vào các bảng. Trả về True nếu file tồn tại và checksum hợp lệ.
        """
        if not self.path.exists():
            log("Cache", f"Chưa có cache tại {self.path}, sẽ tính mới")
            return False
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except (OSError, UnicodeDecodeError) as e:
            log("Cache", f"Không đọc được {self.path}: {e}; tính lại từ đầu")
            return False

        if not lines or lines[0].strip() != CACHE_HEADER:
            log("Cache", f"Sai phiên bản định dạng trong {self.path}; bỏ qua cache")
            return False
        if len(lines) < 2 or not lines[-1].startswith(CHECKSUM_PREFIX):
            log("Cache", f"Thiếu dòng checksum trong {self.path}; bỏ qua cache")
            return False

        records = lines[1:-1]
        expected = lines[-1][len(CHECKSUM_PREFIX):].strip()
        if _checksum(records) != expected:
            log("Cache", f"Checksum không khớp trong {self.path}; bỏ qua cache và tính lại")
            return False

        for number, line in enumerate(records, start=2):
            if not line.strip():
                continue
            try:
                self._load_record(line)
            except (MsymError, ValueError) as e:
                log("Cache", f"Bỏ qua dòng {number} không hợp lệ: {e}")
        self._saved_size = (len(self.plethysm), len(self.rewrites))
        log("Cache", f"Đã đọc {self.loaded_plethysm} bảng P và {self.loaded_rewrites} kết quả rewrite từ: {self.path}")
        return True

    def _load_record(self, line: str) -> None:
        tag, _, rest = line.partition(" ")
        if tag == "P":
            h_text, k_text, poly_text = rest.split(" ", 2)
            h, k = int(h_text), int(k_text)
            if h < 1 or k < 1:
                raise ValueError(f"invalid plethysm index ({h}, {k})")
            self.plethysm.put(h, k, parse(poly_text, "elementary"))
            self.loaded_plethysm += 1
        elif tag == "RW":
            m_text, body = rest.split(" ", 1)
            m = int(m_text)
            close = body.index("}") + 1
            alpha = parse(body[:close], "orbit-index", m=m)
            self.rewrites.put(alpha, parse(body[close:].strip(), "generator-poly", m=m))
            self.loaded_rewrites += 1
        else:
            raise ValueError(f"unknown record tag '{tag}'")

    # ========== GHI ==========

    @property
    def dirty(self) -> bool:
        return (len(self.plethysm), len(self.rewrites)) != self._saved_size

    def records(self) -> list[str]:
        """Các dòng bản ghi theo thứ tự xác định (P theo (h, k), RW theo m rồi theo chỉ số quỹ đạo)."""
        lines = [f"P {h} {k} {P.to_text()}" for (h, k), P in self.plethysm.items()]
        lines += [f"RW {alpha.arity} {alpha.to_text()} {G.to_text()}" for alpha, G in self.rewrites.items()]
        return lines

    def save(self, force: bool = False) -> bool:
        """
        Ghi toàn bộ các bảng ra file (ghi file tạm rồi thay thế).

        Returns:
            True nếu đã ghi, False nếu không có gì mới hoặc có lỗi
        """
        if not (force or self.dirty):
            return False
        try:
            self.base_dir.mkdir(parents=True, exist_ok=True)
            records = self.records()
            body = [CACHE_HEADER, *records, CHECKSUM_PREFIX + _checksum(records)]
            tmp = self.path.with_suffix(".tmp")
            tmp.write_text("\n".join(body) + "\n", encoding="utf-8")
            tmp.replace(self.path)
        except OSError as e:
            log("Cache", f"Lỗi khi lưu cache vào {self.path}: {e}")
            return False
        self._saved_size = (len(self.plethysm), len(self.rewrites))
        log("Cache", f"Đã lưu {len(self.plethysm)} bảng P và {len(self.rewrites)} kết quả rewrite vào: {self.path}")
        return True


# ========== BÁO CÁO CHỨNG NHẬN ==========

REPORT_COLUMNS = ["check", "n", "m", "multidegree", "coeff", "rows", "cols",
                  "ranks", "verdict", "escalation", "details", "elapsed"]


def _pairs_text(mapping: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in sorted(mapping.items()))


def _pairs_from(text) -> dict[str, str]:
    if not isinstance(text, str) or not text:
        return {}
    return dict(item.split("=", 1) for item in text.split(";"))


def report_frame(certificates: list[RankCertificate]) -> pd.DataFrame:
    """Một hàng cho mỗi chứng nhận; thời gian chạy luôn được ghi."""
    rows = []
    for cert in certificates:
        rows.append({
            "check": cert.check,
            "n": "" if cert.n is None else cert.n,
            "m": cert.m,
            "multidegree": "" if cert.multidegree is None else ",".join(str(x) for x in cert.multidegree),
            "coeff": cert.coeff,
            "rows": cert.dimensions[0],
            "cols": cert.dimensions[1],
            "ranks": _pairs_text(cert.ranks),
            "verdict": cert.verdict,
            "escalation": cert.escalation,
            "details": _pairs_text(cert.details),
            "elapsed": round(cert.elapsed, 6),
        })
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def save_report(certificates: list[RankCertificate], suite: str, coeff: str,
                report_dir: str | Path | None = None) -> Path | None:
    """
    Lưu báo cáo của một lần verify vào file CSV.

    Returns:
        Đường dẫn file CSV, hoặc None nếu có lỗi
    """
    directory = Path(report_dir or Config.REPORT_DIR)
    safe_coeff = coeff.replace(":", "")
    stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    csv_path = directory / f"verify_{suite}_{safe_coeff}_{stamp}.csv"
    try:
        directory.mkdir(parents=True, exist_ok=True)
        report_frame(certificates).to_csv(csv_path, index=False, encoding="utf-8")
    except OSError as e:
        log("Cache", f"Lỗi khi lưu báo cáo: {e}")
        return None
    log("Cache", f"Đã lưu báo cáo {suite} vào: {csv_path}")
    return csv_path


def load_report(csv_path: str | Path) -> list[RankCertificate]:
    """Đọc lại một báo cáo CSV thành danh sách RankCertificate."""
    df = pd.read_csv(csv_path, dtype=str, keep_default_na=False)
    certificates = []
    for _, row in df.iterrows():
        certificates.append(RankCertificate(
            check=row["check"],
            n=int(row["n"]) if row["n"] else None,
            m=int(row["m"]),
            multidegree=tuple(int(x) for x in row["multidegree"].split(",")) if row["multidegree"] else None,
            coeff=row["coeff"],
            dimensions=(int(row["rows"]), int(row["cols"])),
            ranks={k: int(v) for k, v in _pairs_from(row["ranks"]).items()},
            verdict=row["verdict"],
            escalation=int(row["escalation"]),
            details=_pairs_from(row["details"]),
            elapsed=float(row["elapsed"]),
        ))
    return certificates
