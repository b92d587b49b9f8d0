from .algorithm import (AmplitudeTensor, QueryAlgorithm, QuerySamples, averaging_algorithm, product_of_dictators,
                        qqa_evaluate, qqa_extract_tensor, qqa_sample_stream, random_algorithm)
from .io import load_algorithm, load_tensor_csv, save_algorithm, save_tensor_csv

__all__ = [
    "AmplitudeTensor", "QueryAlgorithm", "QuerySamples", "averaging_algorithm", "product_of_dictators",
    "qqa_evaluate", "qqa_extract_tensor", "qqa_sample_stream", "random_algorithm",
    "load_algorithm", "load_tensor_csv", "save_algorithm", "save_tensor_csv",
]
