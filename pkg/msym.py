# msym.py
# Script chính: giao diện dòng lệnh cho vành các hàm đa đối xứng
import argparse
import json
import sys

from core.config import Config, log
from core.errors import DomainError, MsymError
from core.grammar import parse
from core.ringcore import CoeffRing
from analysis.concrete import orbit_sum, to_orbit_basis
from analysis.data_cache import MsymCache, save_report
from analysis.orbitring import project_n
from analysis.presentation import eval_generator_poly, rational_rewrite_to_e1, rewrite_to_generators
from analysis.symfun import plethysm_P, truncate_to_n
from analysis.verification_service import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    SUITES,
    VerificationService,
)


class MsymArgumentParser(argparse.ArgumentParser):
    """ArgumentParser trả mã thoát 1 (lỗi cú pháp dòng lệnh) thay cho mã 2 mặc định."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"error: {message}\n")


# ========== ĐỊNH DẠNG KẾT QUẢ ==========

def _emit(args, text: str, record: dict) -> None:
    if args.json:
        print(json.dumps(record, indent=2, ensure_ascii=False))
    else:
        print(text)


def _poly_record(p, **extra) -> dict:
    ring = p.coeff_ring
    terms = [{"monomial": p.monomial_text(exps), "coefficient": ring.to_string(c)}
             for exps, c in p.sorted_terms()]
    return {"kind": "poly", "ring": ring.spec, **extra, "text": p.to_text(), "terms": terms}


def _free_record(kind: str, G, **extra) -> dict:
    ring = G.coeff_ring
    terms = [{"monomial": G.key_text(key) or "1", "coefficient": ring.to_string(c)}
             for key, c in G.sorted_terms()]
    return {"kind": kind, "ring": ring.spec, **extra, "text": G.to_text(), "terms": terms}


def _orbit_record(x, **extra) -> dict:
    ring = x.coeff_ring
    terms = [{"orbit": alpha.to_text(), "coefficient": ring.to_string(c)}
             for alpha, c in x.sorted_terms()]
    return {"kind": "orbit", "ring": ring.spec, "m": str(x.arity), **extra,
            "text": x.to_text(), "terms": terms}


# ========== CÁC LỆNH ==========

def _require_n(args, command: str) -> int:
    if args.n is None:
        raise DomainError(f"{command} requires --n")
    if args.n < 1:
        raise DomainError("--n must be >= 1")
    return args.n


def _require_m(args, command: str) -> int:
    if args.m is None:
        raise DomainError(f"{command} requires --m")
    if args.m < 1:
        raise DomainError("--m must be >= 1")
    return args.m


def cmd_expand(args, ring: CoeffRing) -> int:
    m, n = _require_m(args, "expand"), _require_n(args, "expand")
    alpha = parse(args.orbit, "orbit-index", m=m)
    if alpha.size > n:
        log("Expand", f"|α| = {alpha.size} > n = {n}: tổng quỹ đạo bằng 0")
    p = orbit_sum(alpha, n, ring)
    _emit(args, p.to_text(), _poly_record(p, n=str(n), m=str(m)))
    return EXIT_OK


def cmd_mul(args, ring: CoeffRing) -> int:
    m = _require_m(args, "mul")
    x = parse(args.left, "orbit-element", m=m, coeff=ring)
    y = parse(args.right, "orbit-element", m=m, coeff=ring)
    product = x * y
    if args.n is not None:
        product = project_n(product, _require_n(args, "mul"))
    extra = {} if args.n is None else {"n": str(args.n)}
    _emit(args, product.to_text(), _orbit_record(product, **extra))
    return EXIT_OK


def cmd_rewrite(args, ring: CoeffRing) -> int:
    m = _require_m(args, "rewrite")
    alpha = parse(args.orbit, "orbit-index", m=m)
    if args.q:
        target = CoeffRing.rationals() if args.coeff is None else ring
        G = rational_rewrite_to_e1(alpha, target)
    else:
        if alpha in args.cache.rewrites:
            log("Cache", f"Cache hit: rewrite {alpha.to_text()}")
        target = ring
        G = rewrite_to_generators(alpha, target)
    _emit(args, G.to_text(), _free_record("generator", G, m=str(m), orbit=alpha.to_text()))

    if args.check_n is not None:
        if args.check_n < 1:
            raise DomainError("--check-n must be >= 1")
        ok = eval_generator_poly(G, args.check_n, m) == orbit_sum(alpha, args.check_n, target)
        if not args.json:
            print(f"check n={args.check_n}: {'pass' if ok else 'fail'}")
        log("Rewrite", f"Kiểm tra tại n={args.check_n}: {'khớp' if ok else 'KHÔNG khớp'} với orbit_sum")
        if not ok:
            return EXIT_FAILED
    return EXIT_OK


def cmd_plethysm(args, ring: CoeffRing) -> int:
    if args.h < 1 or args.k < 1:
        raise DomainError(f"plethysm needs h, k >= 1, got ({args.h}, {args.k})")
    if (args.h, args.k) in args.cache.plethysm:
        log("Cache", f"Cache hit: P_{{{args.h},{args.k}}}")
    P = plethysm_P(args.h, args.k)
    if args.n is not None:
        P = truncate_to_n(P, _require_n(args, "plethysm"))
    if ring != CoeffRing.integers():
        P = P.change_ring(ring)
    extra = {"h": str(args.h), "k": str(args.k)}
    if args.n is not None:
        extra["n"] = str(args.n)
    _emit(args, P.to_text(), _free_record("poly", P, **extra))
    return EXIT_OK


def cmd_eval(args, ring: CoeffRing) -> int:
    m, n = _require_m(args, "eval"), _require_n(args, "eval")
    G = parse(args.generator, "generator-poly", m=m, coeff=ring)
    p = eval_generator_poly(G, n, m)
    if args.basis:
        x = to_orbit_basis(p)
        _emit(args, x.to_text(), _orbit_record(x, n=str(n)))
    else:
        _emit(args, p.to_text(), _poly_record(p, n=str(n), m=str(m)))
    return EXIT_OK


def cmd_verify(args, ring: CoeffRing) -> int:
    m = _require_m(args, "verify")
    service = VerificationService(ring, args.n, m, maxdeg=args.maxdeg, budget=args.budget,
                                  workers=args.workers)
    report = service.run(args.suite)
    if args.json:
        records = [c.to_record(args.timings) for c in report.certificates]
        records.append(report.summary_record())
        print(json.dumps(records, indent=2, ensure_ascii=False))
    else:
        for cert in report.certificates:
            print(cert.to_line(args.timings))
        for line in report.summary_lines():
            print(line)
    if args.report:
        save_report(report.certificates, args.suite, ring.spec)
    return report.exit_code


COMMANDS = {
    "expand": cmd_expand,
    "mul": cmd_mul,
    "rewrite": cmd_rewrite,
    "plethysm": cmd_plethysm,
    "eval": cmd_eval,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--m", type=int, help="Số họ biến y1..ym")
    shared.add_argument("--n", type=int, help="Số slot (bỏ trống: làm việc trong A(∞,m))")
    shared.add_argument("--coeff", help="Vành hệ số: z | q | fp:<p> (mặc định: Config.DEFAULT_COEFF)")
    shared.add_argument("--json", action="store_true", help="In kết quả dạng JSON")
    shared.add_argument("--cache-dir", help="Thư mục cache P_{h,k} và rewrite (mặc định: Config.CACHE_DIR)")

    parser = MsymArgumentParser(
        prog="msym",
        description="Tính toán trong vành các hàm đa đối xứng A(n,m)^{S_n}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ví dụ sử dụng:
  # Khai triển một tổng quỹ đạo trong A(3,2)
  python msym.py expand --m 2 --n 3 "E{y1:2, y2:1}"

  # Viết lại theo các phần tử sinh e[i;μ], kiểm tra tại n = 3
  python msym.py rewrite --m 2 "E{y1:2, y2:1}" --check-n 3

  # Viết lại hữu tỉ theo e1[μ]
  python msym.py rewrite --m 1 "E{y1:2}" --q

  # Đa thức plethysm P_{3,2} (lần chạy thứ hai đọc từ cache)
  python msym.py plethysm --h 3 --k 2

  # Chứng nhận cận bậc sinh trên F_2
  python msym.py verify degree-bound --n 2 --m 3 --coeff fp:2 --maxdeg 6
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=MsymArgumentParser)

    p = sub.add_parser("expand", parents=[shared], help="Khai triển e_α thành đa thức cụ thể trong A(n,m)")
    p.add_argument("orbit", help='Chỉ số quỹ đạo, ví dụ "E{y1:2, y2:1}"')

    p = sub.add_parser("mul", parents=[shared], help="Nhân hai phần tử trong A(∞,m) (chiếu xuống A(n,m) nếu có --n)")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("rewrite", parents=[shared], help="Viết lại e_α theo các phần tử sinh")
    p.add_argument("orbit")
    p.add_argument("--q", action="store_true", help="Viết lại hữu tỉ theo e1[μ]")
    p.add_argument("--check-n", type=int, help="Đánh giá tại n và so với orbit_sum")

    p = sub.add_parser("plethysm", parents=[shared], help="Đa thức P_{h,k} theo e_1..e_{hk}")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("eval", parents=[shared], help="Đánh giá một đa thức sinh trong A(n,m)")
    p.add_argument("generator", help='Ví dụ "e[2;y1]*e[1;y2]"')
    p.add_argument("--basis", action="store_true", help="In tọa độ trong cơ sở quỹ đạo")

    p = sub.add_parser("verify", parents=[shared], help="Chạy một bộ chứng nhận hạng")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--maxdeg", type=int, default=6, help="Tổng bậc tối đa của đa bậc a (mặc định: 6)")
    p.add_argument("--budget", type=float,
                   help="Ngân sách giây cho mỗi trường hợp (mặc định: Config.CASE_BUDGET_SECONDS). "
                        "Chỉ được kiểm tra sau khi trường hợp chạy xong; trường hợp đang chạy không bị ngắt")
    p.add_argument("--workers", type=int, help="Số luồng song song (mặc định: Config.WORKERS)")
    p.add_argument("--report", action="store_true", help="Lưu báo cáo CSV vào Config.REPORT_DIR")
    p.add_argument("--timings", action="store_true", help="Thêm thời gian chạy vào mỗi dòng")
    return parser


def main(argv=None) -> int:
    """
    Entry point của msym. Trả về mã thoát:
    0 thành công, 1 lỗi cú pháp/đầu vào, 2 chứng nhận thất bại, 3 vượt ngân sách.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        ring = CoeffRing.parse_spec(args.coeff or Config.DEFAULT_COEFF)
    except MsymError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    args.cache = MsymCache(args.cache_dir)
    args.cache.load()
    try:
        code = COMMANDS[args.command](args, ring)
    except MsymError as e:
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_USAGE
    args.cache.save()
    return code


if __name__ == "__main__":
    sys.exit(main())
