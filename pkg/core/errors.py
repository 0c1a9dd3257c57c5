# core/errors.py
"""Các lỗi miền của msym. CLI ánh xạ chúng sang mã thoát."""


class MsymError(Exception):
    """Lỗi gốc cho mọi vi phạm điều kiện trong thư viện."""


class ParseError(MsymError):
    """Lỗi cú pháp, kèm vị trí (0-based) trong chuỗi đầu vào."""

    def __init__(self, reason: str, position: int, text: str = ""):
        self.reason = reason
        self.position = position
        self.text = text
        super().__init__(f"{reason} at position {position}")


class RingMismatchError(MsymError):
    """Hai đối tượng khác số biến (arity) hoặc khác vành hệ số."""


class DomainError(MsymError):
    """Đầu vào vi phạm điều kiện tiên quyết của phép toán."""


class BudgetExceeded(MsymError):
    """Một trường hợp chứng nhận vượt quá ngân sách thời gian."""
