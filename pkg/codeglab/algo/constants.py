ENUMERATION_CAP = 1_000_000  # 全枚举上限：类、特征标表都依赖元素索引
LIFTING_PRIME_SEARCH_BOUND = 50_000  # 搜索 ℓ ≡ 1 (mod e) 时最多尝试的倍数
FIELD_ORDER_CAP = 1024  # 有限域加法、乘法表为 q×q

TITS_GROUP_ORDER = 17_971_200  # ²F₄(2)′，只按阶识别

CASE_LABELS_A = ["1", "2", "3", "4", "5a", "5b", "5c", "6a", "6b", "6c", "7a", "7b", "7c"]
CASE_LABELS_C = ["1", "2", "3a", "3b", "3c", "4", "5", "6"]

# 分类情形到推论情形（H_p* 一侧）的标签对应
A_TO_C = {
    "1": "1",
    "2": "2",
    "5a": "3a",
    "5b": "3b",
    "5c": "3c",
    "6a": "4",
    "6b": "5",
    "6c": "6",
}

CASE4_READING_KERNEL = "V=O_p(N), |K/V|=(p^(pm)-1)/(p^m-1)"
CASE4_READING_ALTERNATIVE = "|K/V|=(p^m-1)/(p-1)"
