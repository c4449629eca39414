# steps/shared/values.py


def ints(text):
    """'2,4' -> [2, 4]; 'none' is the empty list"""
    text = text.strip()
    if text in ("", "none"):
        return []
    return [int(part) for part in text.split(",")]
