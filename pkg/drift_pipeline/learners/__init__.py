from drift_pipeline.learners.kernels import KernelSpec, rbf_kernel
from drift_pipeline.learners.logistic import LogisticConfig, LogisticModel, logistic_fit, logistic_score
from drift_pipeline.learners.one_class_svm import (
    OneClassSvmModel, SolverConfig, ocsvm_fit, ocsvm_predict, ocsvm_decision,
)
from drift_pipeline.learners.hoeffding_tree import (
    HoeffdingConfig, HoeffdingTree, hoeffding_learn_one, hoeffding_predict_one, train_tree,
)
